#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bhvqe {

enum class ErrorKind {
  DimensionMismatch,
  NotHermitian,
  NotPowerOfTwo,
  InvalidArgument,
  DomainError,
  UnsupportedLattice,
  ParamLengthMismatch,
  QubitMismatch,
  TooFewQubits,
  NonFiniteObjective,
  DegenerateData,
  NegativeIntercept,
  OutOfRange,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::NotHermitian: return "NotHermitian";
  case ErrorKind::NotPowerOfTwo: return "NotPowerOfTwo";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::DomainError: return "DomainError";
  case ErrorKind::UnsupportedLattice: return "UnsupportedLattice";
  case ErrorKind::ParamLengthMismatch: return "ParamLengthMismatch";
  case ErrorKind::QubitMismatch: return "QubitMismatch";
  case ErrorKind::TooFewQubits: return "TooFewQubits";
  case ErrorKind::NonFiniteObjective: return "NonFiniteObjective";
  case ErrorKind::DegenerateData: return "DegenerateData";
  case ErrorKind::NegativeIntercept: return "NegativeIntercept";
  case ErrorKind::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace bhvqe
