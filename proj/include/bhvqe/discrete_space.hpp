#pragma once

// One-dimensional lattice operators: position, discrete Fourier transform and
// the Fourier-conjugated momentum.

#include "bhvqe/errors.hpp"
#include "bhvqe/tensor.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

namespace bhvqe {

constexpr bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

constexpr std::size_t log2_exact(std::size_t n) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < n)
    ++q;
  return q;
}

/// Number of lattice points per dimension. Must be a power of two ≥ 2 so that
/// one dimension occupies log2(N) qubits.
class LatticeSpec {
public:
  explicit LatticeSpec(std::size_t n_points = 4) : n_(n_points) {
    if (n_ < 2 || !is_power_of_two(n_))
      throw Error(ErrorKind::InvalidArgument,
                  "lattice size must be a power of two >= 2, got " +
                      std::to_string(n_));
  }

  std::size_t n_points() const noexcept { return n_; }
  std::size_t qubits() const noexcept { return log2_exact(n_); }

  /// √(π/2N), the spacing between neighbouring position eigenvalues.
  double spacing() const {
    return std::sqrt(std::numbers::pi / (2.0 * static_cast<double>(n_)));
  }

private:
  std::size_t n_;
};

/// diag(√(π/2N)·(−N/2, …, N/2−1))
inline ComplexMatrix position_operator(const LatticeSpec &spec) {
  const std::size_t n = spec.n_points();
  const double h = spec.spacing();
  const auto half = static_cast<double>(n / 2);
  ComplexMatrix x(n);
  for (std::size_t j = 0; j < n; ++j)
    x(j, j) = h * (static_cast<double>(j) - half);
  return x;
}

/// [F]_{jk} = exp(2πi·jk/N)/√N, 0-based j, k.
inline ComplexMatrix dft_matrix(const LatticeSpec &spec) {
  const std::size_t n = spec.n_points();
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix f(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      // Reduce jk mod N first so the phase is taken from an exact small integer.
      const auto jk = static_cast<double>((j * k) % n);
      const double angle = 2.0 * std::numbers::pi * jk / static_cast<double>(n);
      f(j, k) = std::polar(norm, angle);
    }
  return f;
}

/// p = F⁻¹·x·F with F⁻¹ = F†.
inline ComplexMatrix momentum_operator(const LatticeSpec &spec) {
  const ComplexMatrix f = dft_matrix(spec);
  return matmul(dagger(f), matmul(position_operator(spec), f));
}

/// p² = F†·x²·F, formed from the squared diagonal so the result is exactly
/// positive semidefinite up to rounding of the transform.
inline ComplexMatrix momentum_squared(const LatticeSpec &spec) {
  const ComplexMatrix f = dft_matrix(spec);
  const ComplexMatrix x = position_operator(spec);
  return matmul(dagger(f), matmul(matmul(x, x), f));
}

} // namespace bhvqe
