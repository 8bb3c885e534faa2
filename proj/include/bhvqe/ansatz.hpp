#pragma once

#include "bhvqe/circuit.hpp"
#include "bhvqe/errors.hpp"

#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace bhvqe {

enum class AnsatzFamily {
  U3Cnot, // ansatz1: U3 on both qubits of every pair, then CNOT
  U3Cu3,  // ansatz2: U3 on the control, then controlled-U3 for every pair
  U3Ry,   // ansatz3: U3 then RY on every qubit, no entanglers
};

struct AnsatzKind {
  AnsatzFamily family = AnsatzFamily::U3Ry;
  int reps = 2;

  static constexpr int default_reps(AnsatzFamily f) {
    return f == AnsatzFamily::U3Ry ? 2 : 1;
  }

  static AnsatzKind of(AnsatzFamily f) { return {f, default_reps(f)}; }
};

constexpr std::string_view ansatz_name(AnsatzFamily f) {
  switch (f) {
  case AnsatzFamily::U3Cnot: return "ansatz1";
  case AnsatzFamily::U3Cu3: return "ansatz2";
  case AnsatzFamily::U3Ry: return "ansatz3";
  }
  return "?";
}

inline std::optional<AnsatzFamily> parse_ansatz(std::string_view name) {
  if (name == "ansatz1") return AnsatzFamily::U3Cnot;
  if (name == "ansatz2") return AnsatzFamily::U3Cu3;
  if (name == "ansatz3") return AnsatzFamily::U3Ry;
  return std::nullopt;
}

inline std::size_t min_qubits(AnsatzFamily f) {
  return f == AnsatzFamily::U3Ry ? 1 : 2;
}

/// Builds the circuit for `kind` on n qubits. Pair-based families walk the
/// unordered pairs (i < j) in lexicographic order; every gate instance gets
/// its own parameter slots.
inline Circuit build_ansatz(const AnsatzKind &kind, std::size_t n_qubits) {
  if (kind.reps < 1)
    throw Error(ErrorKind::InvalidArgument,
                "ansatz repetitions must be >= 1, got " + std::to_string(kind.reps));
  if (n_qubits < min_qubits(kind.family))
    throw Error(ErrorKind::TooFewQubits,
                std::string(ansatz_name(kind.family)) + " needs at least " +
                    std::to_string(min_qubits(kind.family)) + " qubits");
  Circuit c(n_qubits);
  for (int rep = 0; rep < kind.reps; ++rep) {
    switch (kind.family) {
    case AnsatzFamily::U3Cnot:
      for (std::size_t i = 0; i < n_qubits; ++i)
        for (std::size_t j = i + 1; j < n_qubits; ++j) {
          c.u3(i);
          c.u3(j);
          c.cnot(i, j);
        }
      break;
    case AnsatzFamily::U3Cu3:
      for (std::size_t i = 0; i < n_qubits; ++i)
        for (std::size_t j = i + 1; j < n_qubits; ++j) {
          c.u3(i);
          c.cu3(i, j);
        }
      break;
    case AnsatzFamily::U3Ry:
      for (std::size_t q = 0; q < n_qubits; ++q) {
        c.u3(q);
        c.ry(q);
      }
      break;
    }
  }
  return c;
}

inline std::size_t parameter_count(const AnsatzKind &kind, std::size_t n_qubits) {
  return build_ansatz(kind, n_qubits).n_params();
}

/// Uniform draws in [−π, π).
inline std::vector<double> random_parameters(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (auto &v : out) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v = -std::numbers::pi + 2.0 * std::numbers::pi * u;
  }
  return out;
}

} // namespace bhvqe
