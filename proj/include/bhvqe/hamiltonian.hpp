#pragma once

// Black-hole Hamiltonian assembly and conversion between dense matrices and
// weighted Pauli-string sums.

#include "bhvqe/discrete_space.hpp"
#include "bhvqe/errors.hpp"
#include "bhvqe/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bhvqe {

/// Mass and radius in Planck units, G = 1 by default.
struct BlackHoleParams {
  double mass = 1.0;
  double radius = 1.0;
  double g_const = 1.0;

  /// ρ = G·M/(2r)
  double rho() const { return g_const * mass / (2.0 * radius); }
};

/// ½·(1 + GM/2r)^{1/4}
inline double metric_prefactor(const BlackHoleParams &p) {
  if (!(p.mass > 0.0) || !std::isfinite(p.mass))
    throw Error(ErrorKind::DomainError,
                "mass must be positive and finite, got " + std::to_string(p.mass));
  if (!(p.radius > 0.0) || !std::isfinite(p.radius))
    throw Error(ErrorKind::DomainError, "radius must be positive and finite, got " +
                                            std::to_string(p.radius));
  const double rho = p.rho();
  if (!std::isfinite(rho))
    throw Error(ErrorKind::DomainError, "GM/2r is not finite");
  return 0.5 * std::pow(1.0 + rho, 0.25);
}

enum class LayoutVariant { PaperChain, Disjoint };

/// PaperChain: 4 qubits, one (p²) block on each of the overlapping pairs
/// (0,1), (1,2), (2,3). Disjoint: `dims` blocks on disjoint qubit groups.
struct HamiltonianLayout {
  LayoutVariant variant = LayoutVariant::PaperChain;
  int dims = 3;

  static HamiltonianLayout paper_chain() { return {LayoutVariant::PaperChain, 3}; }
  static HamiltonianLayout disjoint(int dims) {
    if (dims < 1 || dims > 3)
      throw Error(ErrorKind::InvalidArgument,
                  "disjoint layout supports 1 to 3 dimensions, got " +
                      std::to_string(dims));
    return {LayoutVariant::Disjoint, dims};
  }
};

inline constexpr double kCoefficientCutoff = 1e-12;

/// Weighted sum of Pauli strings on a fixed register. Terms are kept sorted by
/// their letters with duplicates merged.
class PauliHamiltonian {
public:
  PauliHamiltonian() = default;

  PauliHamiltonian(std::size_t n_qubits, const std::vector<PauliTerm> &terms)
      : n_qubits_(n_qubits) {
    if (n_qubits_ == 0)
      throw Error(ErrorKind::InvalidArgument, "Hamiltonian needs at least one qubit");
    std::map<PauliString, double> merged;
    for (const auto &t : terms) {
      if (t.string.size() != n_qubits_)
        throw Error(ErrorKind::QubitMismatch,
                    "term " + t.string.str() + " does not act on " +
                        std::to_string(n_qubits_) + " qubits");
      if (!std::isfinite(t.coefficient))
        throw Error(ErrorKind::InvalidArgument,
                    "non-finite coefficient on " + t.string.str());
      merged[t.string] += t.coefficient;
    }
    terms_.reserve(merged.size());
    for (const auto &[s, c] : merged)
      terms_.push_back({c, s});
  }

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::vector<PauliTerm> &terms() const noexcept { return terms_; }

  /// Coefficient of `letters`, zero when the string is absent.
  double coefficient(std::string_view letters) const {
    for (const auto &t : terms_)
      if (t.string.str() == letters)
        return t.coefficient;
    return 0.0;
  }

  PauliHamiltonian scaled(double factor) const {
    PauliHamiltonian out = *this;
    for (auto &t : out.terms_)
      t.coefficient *= factor;
    return out;
  }

private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

inline ComplexMatrix to_matrix(const PauliHamiltonian &h) {
  ComplexMatrix out(std::size_t{1} << h.n_qubits());
  for (const auto &t : h.terms()) {
    const ComplexMatrix p = pauli_matrix(t.string);
    for (std::size_t i = 0; i < out.dim(); ++i)
      for (std::size_t j = 0; j < out.dim(); ++j)
        out(i, j) += t.coefficient * p(i, j);
  }
  return out;
}

/// Coefficients Tr[P_s·m]/2ⁿ over all 4ⁿ strings, dropping |c| < 1e-12.
inline PauliHamiltonian pauli_decompose(const ComplexMatrix &m) {
  if (m.dim() < 2 || !is_power_of_two(m.dim()))
    throw Error(ErrorKind::NotPowerOfTwo,
                "dimension " + std::to_string(m.dim()) + " is not a power of two");
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol)
    throw Error(ErrorKind::NotHermitian,
                "max |m - m^dagger| = " + std::to_string(defect));

  const std::size_t n = log2_exact(m.dim());
  const std::size_t dim = m.dim();
  std::vector<PauliTerm> terms;
  for (const auto &s : all_pauli_strings(n)) {
    // Each Pauli string has one nonzero per row, so Tr[P·m] = Σ_i P(i,σ(i))·m(σ(i),i).
    const ComplexMatrix p = pauli_matrix(s);
    cplx tr = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < dim; ++k)
        if (p(i, k) != cplx{})
          tr += p(i, k) * m(k, i);
    tr /= static_cast<double>(dim);
    if (std::abs(tr.imag()) > kHermitianTol)
      throw Error(ErrorKind::NotHermitian,
                  "imaginary coefficient on " + s.str());
    if (std::abs(tr.real()) >= kCoefficientCutoff)
      terms.push_back({tr.real(), s});
  }
  return PauliHamiltonian(n, terms);
}

/// Options that change which Hamiltonian `assemble` builds.
struct AssembleOptions {
  /// Halve every (p²) block as in the continuum kinetic form p²/2.
  bool inner_half = false;
  /// Replace the metric prefactor by 1, exposing the bare bracket.
  bool normalize_prefactor = false;
};

namespace detail {

/// The bracket of the Hamiltonian (everything inside the prefactor).
inline PauliHamiltonian bracket(const HamiltonianLayout &layout,
                                const LatticeSpec &spec, bool inner_half) {
  const double block_scale = inner_half ? 0.5 : 1.0;
  if (layout.variant == LayoutVariant::PaperChain) {
    if (spec.n_points() != 4)
      throw Error(ErrorKind::UnsupportedLattice,
                  "paper-chain layout is defined for N = 4 only, got N = " +
                      std::to_string(spec.n_points()));
    constexpr double pi = std::numbers::pi;
    constexpr std::size_t n = 4;
    std::vector<PauliTerm> terms;
    for (std::size_t g = 0; g + 1 < n; ++g) {
      terms.push_back({block_scale * pi / 8, PauliString::with(n, {{g, 'X'}, {g + 1, 'X'}})});
      terms.push_back({block_scale * pi / 16, PauliString::with(n, {{g, 'X'}})});
      terms.push_back({block_scale * pi / 8, PauliString::with(n, {{g + 1, 'X'}})});
      terms.push_back({block_scale * 3 * pi / 16, PauliString(std::string(n, 'I'))});
    }
    return PauliHamiltonian(n, terms);
  }

  const std::size_t q = spec.qubits();
  const auto dims = static_cast<std::size_t>(layout.dims);
  const std::size_t n = q * dims;
  const PauliHamiltonian block = pauli_decompose(momentum_squared(spec));
  std::vector<PauliTerm> terms;
  for (std::size_t d = 0; d < dims; ++d)
    for (const auto &t : block.terms()) {
      std::string letters(n, 'I');
      std::copy(t.string.str().begin(), t.string.str().end(),
                letters.begin() + static_cast<std::ptrdiff_t>(d * q));
      terms.push_back({block_scale * t.coefficient, PauliString(letters)});
    }
  return PauliHamiltonian(n, terms);
}

} // namespace detail

inline PauliHamiltonian assemble(const BlackHoleParams &params,
                                 const HamiltonianLayout &layout,
                                 const LatticeSpec &spec,
                                 const AssembleOptions &opts = {}) {
  const double prefactor = metric_prefactor(params);
  return detail::bracket(layout, spec, opts.inner_half)
      .scaled(opts.normalize_prefactor ? 1.0 : prefactor);
}

/// The bracket alone (prefactor 1).
inline PauliHamiltonian assemble_normalized(const HamiltonianLayout &layout,
                                            const LatticeSpec &spec,
                                            bool inner_half = false) {
  return detail::bracket(layout, spec, inner_half);
}

inline constexpr std::size_t kMaxExactQubits = 6;

inline Eigensystem exact_eigensystem(const PauliHamiltonian &h) {
  if (h.n_qubits() > kMaxExactQubits)
    throw Error(ErrorKind::InvalidArgument,
                "exact diagonalization limited to " +
                    std::to_string(kMaxExactQubits) + " qubits");
  return hermitian_eigensystem(to_matrix(h));
}

inline double exact_ground_energy(const PauliHamiltonian &h) {
  return exact_eigensystem(h).values.front();
}

// ---------------------------------------------------------------------------
// Text format: one `<coefficient> <letters>` line per term.

inline std::string format_coefficient(double c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", c);
  return buf;
}

inline void write_pauli_text(std::ostream &os, const PauliHamiltonian &h) {
  for (const auto &t : h.terms())
    os << format_coefficient(t.coefficient) << ' ' << t.string.str() << '\n';
}

inline PauliHamiltonian read_pauli_text(std::istream &is) {
  std::vector<PauliTerm> terms;
  std::optional<std::size_t> n;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#')
      continue;
    std::istringstream ls(line);
    double c = 0.0;
    std::string letters, extra;
    if (!(ls >> c >> letters) || (ls >> extra))
      throw Error(ErrorKind::InvalidArgument,
                  "line " + std::to_string(lineno) + ": expected '<coefficient> <letters>'");
    PauliString s(letters);
    if (n && *n != s.size())
      throw Error(ErrorKind::QubitMismatch,
                  "line " + std::to_string(lineno) + ": inconsistent string length");
    n = s.size();
    terms.push_back({c, s});
  }
  if (!n)
    throw Error(ErrorKind::InvalidArgument, "no Pauli terms found");
  return PauliHamiltonian(*n, terms);
}

} // namespace bhvqe
