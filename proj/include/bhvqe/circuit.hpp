#pragma once

// Statevector simulation of parameterized circuits built from U3, RY, CNOT and
// controlled-U3 gates, plus exact and shot-sampled Pauli expectation values.
//
// Amplitude index convention: qubit 0 is the most significant bit, matching
// the left-to-right Kronecker order used by pauli_matrix().

#include "bhvqe/errors.hpp"
#include "bhvqe/hamiltonian.hpp"
#include "bhvqe/tensor.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace bhvqe {

/// [[cos(θ/2), −e^{iλ}sin(θ/2)], [e^{iφ}sin(θ/2), e^{i(φ+λ)}cos(θ/2)]]
inline ComplexMatrix u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {{c, -std::polar(s, lambda)},
          {std::polar(s, phi), std::polar(c, phi + lambda)}};
}

inline ComplexMatrix ry_matrix(double theta) { return u3_matrix(theta, 0.0, 0.0); }

enum class GateKind { U3, RY, CNOT, CU3 };

constexpr std::size_t slot_count(GateKind kind) {
  switch (kind) {
  case GateKind::U3: return 3;
  case GateKind::RY: return 1;
  case GateKind::CNOT: return 0;
  case GateKind::CU3: return 3;
  }
  return 0;
}

constexpr std::size_t qubit_count(GateKind kind) {
  return (kind == GateKind::CNOT || kind == GateKind::CU3) ? 2 : 1;
}

constexpr const char *gate_name(GateKind kind) {
  switch (kind) {
  case GateKind::U3: return "u3";
  case GateKind::RY: return "ry";
  case GateKind::CNOT: return "cx";
  case GateKind::CU3: return "cu3";
  }
  return "?";
}

/// For two-qubit gates qubits[0] is the control and qubits[1] the target.
struct Gate {
  GateKind kind = GateKind::U3;
  std::array<std::size_t, 2> qubits{};
  std::array<std::size_t, 3> slots{};

  std::size_t n_qubits() const { return qubit_count(kind); }
  std::size_t n_slots() const { return slot_count(kind); }
};

class Circuit {
public:
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits_ == 0)
      throw Error(ErrorKind::InvalidArgument, "circuit needs at least one qubit");
  }

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t n_params() const noexcept { return n_params_; }
  const std::vector<Gate> &gates() const noexcept { return gates_; }

  /// Appends a gate that takes the next fresh parameter slots.
  void append(GateKind kind, std::size_t q0, std::size_t q1 = 0) {
    Gate g{kind, {q0, q1}, {}};
    check_qubits(g);
    for (std::size_t k = 0; k < g.n_slots(); ++k)
      g.slots[k] = n_params_++;
    gates_.push_back(g);
  }

  void u3(std::size_t q) { append(GateKind::U3, q); }
  void ry(std::size_t q) { append(GateKind::RY, q); }
  void cnot(std::size_t control, std::size_t target) {
    append(GateKind::CNOT, control, target);
  }
  void cu3(std::size_t control, std::size_t target) {
    append(GateKind::CU3, control, target);
  }

private:
  void check_qubits(const Gate &g) const {
    for (std::size_t k = 0; k < g.n_qubits(); ++k)
      if (g.qubits[k] >= n_qubits_)
        throw Error(ErrorKind::QubitMismatch,
                    std::string(gate_name(g.kind)) + " on qubit " +
                        std::to_string(g.qubits[k]) + " of a " +
                        std::to_string(n_qubits_) + "-qubit circuit");
    if (g.n_qubits() == 2 && g.qubits[0] == g.qubits[1])
      throw Error(ErrorKind::InvalidArgument,
                  std::string(gate_name(g.kind)) + " control equals target");
  }

  std::size_t n_qubits_;
  std::size_t n_params_ = 0;
  std::vector<Gate> gates_;
};

class StateVector {
public:
  /// |0…0⟩ on n qubits.
  explicit StateVector(std::size_t n_qubits)
      : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
    amps_[0] = 1.0;
  }

  StateVector(std::size_t n_qubits, std::vector<cplx> amplitudes)
      : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (amps_.size() != (std::size_t{1} << n_qubits_))
      throw Error(ErrorKind::DimensionMismatch,
                  "expected " + std::to_string(std::size_t{1} << n_qubits_) +
                      " amplitudes, got " + std::to_string(amps_.size()));
  }

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  const std::vector<cplx> &amplitudes() const noexcept { return amps_; }
  const cplx &operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto &a : amps_)
      s += std::norm(a);
    return std::sqrt(s);
  }

  /// Mask selecting qubit q inside an amplitude index.
  std::size_t mask(std::size_t q) const {
    return std::size_t{1} << (n_qubits_ - 1 - q);
  }

  /// Applies a 2×2 matrix on `target`, optionally only where `control` is |1⟩.
  void apply_1q(const ComplexMatrix &u, std::size_t target,
                std::size_t control_mask = 0) {
    const std::size_t tm = mask(target);
    const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & tm) || (i & control_mask) != control_mask)
        continue;
      const std::size_t j = i | tm;
      const cplx a0 = amps_[i], a1 = amps_[j];
      amps_[i] = u00 * a0 + u01 * a1;
      amps_[j] = u10 * a0 + u11 * a1;
    }
  }

  void apply_cnot(std::size_t control, std::size_t target) {
    const std::size_t cm = mask(control), tm = mask(target);
    for (std::size_t i = 0; i < amps_.size(); ++i)
      if ((i & cm) && !(i & tm))
        std::swap(amps_[i], amps_[i | tm]);
  }

private:
  std::size_t n_qubits_;
  std::vector<cplx> amps_;
};

/// Applies the circuit to |0…0⟩.
inline StateVector run(const Circuit &c, std::span<const double> params) {
  if (params.size() != c.n_params())
    throw Error(ErrorKind::ParamLengthMismatch,
                "circuit has " + std::to_string(c.n_params()) +
                    " parameters, got " + std::to_string(params.size()));
  StateVector s(c.n_qubits());
  for (const auto &g : c.gates()) {
    switch (g.kind) {
    case GateKind::U3:
      s.apply_1q(u3_matrix(params[g.slots[0]], params[g.slots[1]], params[g.slots[2]]),
                 g.qubits[0]);
      break;
    case GateKind::RY:
      s.apply_1q(ry_matrix(params[g.slots[0]]), g.qubits[0]);
      break;
    case GateKind::CNOT:
      s.apply_cnot(g.qubits[0], g.qubits[1]);
      break;
    case GateKind::CU3:
      s.apply_1q(u3_matrix(params[g.slots[0]], params[g.slots[1]], params[g.slots[2]]),
                 g.qubits[1], s.mask(g.qubits[0]));
      break;
    }
  }
  return s;
}

namespace detail {

struct PauliMasks {
  std::size_t flip = 0;   // X or Y
  std::size_t phase = 0;  // Y or Z
  std::size_t n_y = 0;
};

inline PauliMasks pauli_masks(const PauliString &p, const StateVector &s) {
  PauliMasks m;
  for (std::size_t q = 0; q < p.size(); ++q) {
    const std::size_t bit = s.mask(q);
    switch (p[q]) {
    case 'X': m.flip |= bit; break;
    case 'Y': m.flip |= bit; m.phase |= bit; ++m.n_y; break;
    case 'Z': m.phase |= bit; break;
    default: break;
    }
  }
  return m;
}

/// ⟨s|P|s⟩ using P|i⟩ = i^{nY}·(−1)^{|i ∧ phase|}·|i ⊕ flip⟩.
inline double pauli_expectation(const StateVector &s, const PauliString &p) {
  const PauliMasks m = pauli_masks(p, s);
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  cplx acc = 0.0;
  const auto &a = s.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double sign = (std::popcount(i & m.phase) & 1) ? -1.0 : 1.0;
    acc += std::conj(a[i ^ m.flip]) * sign * a[i];
  }
  return (kIPow[m.n_y % 4] * acc).real();
}

} // namespace detail

inline double expectation(const StateVector &s, const PauliHamiltonian &h) {
  if (s.n_qubits() != h.n_qubits())
    throw Error(ErrorKind::QubitMismatch,
                "state has " + std::to_string(s.n_qubits()) +
                    " qubits, Hamiltonian has " + std::to_string(h.n_qubits()));
  double e = 0.0;
  for (const auto &t : h.terms())
    e += t.coefficient *
         (t.string.is_identity() ? 1.0 : detail::pauli_expectation(s, t.string));
  return e;
}

/// Shot-noise estimate of ⟨s|h|s⟩. Each non-identity term is measured
/// separately: the state is rotated into the term's eigenbasis (H for X,
/// H·S† for Y) and `shots` basis outcomes are drawn from the Born
/// distribution; the term estimate is the mean outcome parity.
inline double sampled_expectation(const StateVector &s, const PauliHamiltonian &h,
                                  std::size_t shots, std::uint64_t seed) {
  if (s.n_qubits() != h.n_qubits())
    throw Error(ErrorKind::QubitMismatch,
                "state has " + std::to_string(s.n_qubits()) +
                    " qubits, Hamiltonian has " + std::to_string(h.n_qubits()));
  if (shots == 0)
    throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");

  using namespace std::complex_literals;
  const double r = 1.0 / std::numbers::sqrt2;
  const ComplexMatrix hadamard{{r, r}, {r, -r}};
  const ComplexMatrix s_dagger{{1.0, 0.0}, {0.0, -1i}};

  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0, 1), independent of the standard library's
  // distribution implementations.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<double> cdf(s.dim());
  double e = 0.0;
  for (const auto &t : h.terms()) {
    if (t.string.is_identity()) {
      e += t.coefficient;
      continue;
    }
    StateVector rotated = s;
    std::size_t support = 0;
    for (std::size_t q = 0; q < t.string.size(); ++q) {
      const char c = t.string[q];
      if (c == 'I')
        continue;
      support |= rotated.mask(q);
      if (c == 'Y')
        rotated.apply_1q(s_dagger, q);
      if (c == 'X' || c == 'Y')
        rotated.apply_1q(hadamard, q);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < rotated.dim(); ++i) {
      acc += std::norm(rotated[i]);
      cdf[i] = acc;
    }
    long long parity_sum = 0;
    for (std::size_t shot = 0; shot < shots; ++shot) {
      const double u = uniform() * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end())
        --it;
      const auto outcome = static_cast<std::size_t>(it - cdf.begin());
      parity_sum += (std::popcount(outcome & support) & 1) ? -1 : 1;
    }
    e += t.coefficient * static_cast<double>(parity_sum) / static_cast<double>(shots);
  }
  return e;
}

} // namespace bhvqe
