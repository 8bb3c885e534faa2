#pragma once

// Dense complex matrices and Pauli-string algebra.
//
// Qubit ordering: index 0 of a Pauli string is the leftmost Kronecker factor,
// i.e. the most significant bit of a basis-state index.

#include "bhvqe/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bhvqe {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  /// Row-major nested initializer; must be square.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
      : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
      if (row.size() != dim_)
        throw Error(ErrorKind::DimensionMismatch, "matrix must be square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<double> &diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
      m(i, i) = diag[i];
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  cplx &operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const cplx &operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  const std::vector<cplx> &data() const noexcept { return data_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const cplx &z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  double trace_real() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      t += (*this)(i, i).real();
    return t;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Largest absolute entrywise difference.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch, "max_abs_diff");
  double d = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
  return d;
}

inline double max_abs(const ComplexMatrix &m) {
  double d = 0.0;
  for (const auto &z : m.data())
    d = std::max(d, std::abs(z));
  return d;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch,
                "matmul of " + std::to_string(a.dim()) + "x" +
                    std::to_string(a.dim()) + " and " + std::to_string(b.dim()) +
                    "x" + std::to_string(b.dim()));
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{})
        continue;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += aik * b(k, j);
    }
  return out;
}

inline ComplexMatrix dagger(const ComplexMatrix &m) {
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      out(j, i) = std::conj(m(i, j));
  return out;
}

inline ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch, "add");
  ComplexMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      out(i, j) = a(i, j) + b(i, j);
  return out;
}

inline ComplexMatrix scale(const ComplexMatrix &m, cplx factor) {
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      out(i, j) = factor * m(i, j);
  return out;
}

/// ‖m − m†‖_max
inline double hermiticity_defect(const ComplexMatrix &m) {
  double d = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

inline constexpr double kHermitianTol = 1e-10;

inline bool is_hermitian(const ComplexMatrix &m, double tol = kHermitianTol) {
  return hermiticity_defect(m) <= tol;
}

// ---------------------------------------------------------------------------
// Pauli strings

class PauliString {
public:
  PauliString() = default;
  explicit PauliString(std::string_view letters) : letters_(letters) {
    if (letters_.empty())
      throw Error(ErrorKind::InvalidArgument, "empty Pauli string");
    for (char c : letters_)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        throw Error(ErrorKind::InvalidArgument,
                    "invalid Pauli letter '" + std::string(1, c) + "' in " +
                        letters_);
  }

  /// Identity string of length n with `letter` placed at each listed qubit.
  static PauliString with(std::size_t n_qubits,
                          std::initializer_list<std::pair<std::size_t, char>> ops) {
    std::string s(n_qubits, 'I');
    for (auto [q, c] : ops)
      s.at(q) = c;
    return PauliString(s);
  }

  std::size_t size() const noexcept { return letters_.size(); }
  char operator[](std::size_t q) const { return letters_[q]; }
  const std::string &str() const noexcept { return letters_; }

  bool is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(),
                       [](char c) { return c == 'I'; });
  }

  friend auto operator<=>(const PauliString &, const PauliString &) = default;

private:
  std::string letters_;
};

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

inline ComplexMatrix single_qubit_pauli(char letter) {
  using namespace std::complex_literals;
  switch (letter) {
  case 'I': return {{1.0, 0.0}, {0.0, 1.0}};
  case 'X': return {{0.0, 1.0}, {1.0, 0.0}};
  case 'Y': return {{0.0, -1i}, {1i, 0.0}};
  case 'Z': return {{1.0, 0.0}, {0.0, -1.0}};
  default:
    throw Error(ErrorKind::InvalidArgument,
                "invalid Pauli letter '" + std::string(1, letter) + "'");
  }
}

inline ComplexMatrix pauli_matrix(const PauliString &s) {
  ComplexMatrix out = single_qubit_pauli(s[0]);
  for (std::size_t q = 1; q < s.size(); ++q)
    out = kron(out, single_qubit_pauli(s[q]));
  return out;
}

/// All 4^n strings of length n, lexicographic in the order I < X < Y < Z.
inline std::vector<PauliString> all_pauli_strings(std::size_t n_qubits) {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::size_t total = 1;
  for (std::size_t q = 0; q < n_qubits; ++q)
    total *= 4;
  std::vector<PauliString> out;
  out.reserve(total);
  std::string s(n_qubits, 'I');
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t q = n_qubits; q-- > 0;) {
      s[q] = kLetters[c % 4];
      c /= 4;
    }
    out.emplace_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

struct Eigensystem {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<cplx>> vectors;     // vectors[i] pairs with values[i]
};

/// Eigen-decomposition of a Hermitian matrix. The heavy lifting is delegated
/// to Eigen's self-adjoint tridiagonal QR solver.
inline Eigensystem hermitian_eigensystem(const ComplexMatrix &m) {
  const double defect = hermiticity_defect(m);
  if (defect > kHermitianTol)
    throw Error(ErrorKind::NotHermitian,
                "max |m - m^dagger| = " + std::to_string(defect));
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd em(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      em(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::NotHermitian, "eigensolver did not converge");

  Eigensystem out;
  out.values.resize(m.dim());
  out.vectors.assign(m.dim(), std::vector<cplx>(m.dim()));
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    for (Eigen::Index i = 0; i < n; ++i)
      out.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
          solver.eigenvectors()(i, k);
  }
  return out;
}

} // namespace bhvqe
