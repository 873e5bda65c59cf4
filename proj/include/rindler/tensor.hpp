#pragma once

// Dense complex vectors and matrices over qubit-factorized spaces.
//
// Basis indices follow the most-significant-first convention: in an n-qubit
// register, qubit 0 is bit (n - 1) of the index, so the literal |0110> is
// index 0b0110.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "rindler/errors.hpp"

namespace rindler {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: dimensions must be positive");
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    if (rows_ == 0 || cols_ == 0) throw DimensionError("ComplexMatrix: empty literal");
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ComplexMatrix: ragged literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  Complex trace() const {
    require_square("trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// max |M(i,j) - conj(M(j,i))|; requires a square matrix.
  double hermitian_defect() const {
    require_square("hermitian_defect");
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  /// (M + M^dagger) / 2
  ComplexMatrix hermitian_part() const {
    require_square("hermitian_part");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return out;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    require_same_shape(rhs, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    require_same_shape(rhs, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_square(const char* what) const {
    if (!is_square()) throw DimensionError(std::string(what) + ": matrix is not square");
  }
  void require_same_shape(const ComplexMatrix& other, const char* what) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw DimensionError(std::string(what) + ": shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shapes differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : amps_(dim) {
    if (dim == 0) throw DimensionError("StateVector: dimension must be positive");
  }
  explicit StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) throw DimensionError("StateVector: dimension must be positive");
  }

  static StateVector basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw IndexError("StateVector::basis: index out of range");
    StateVector v(dim);
    v[index] = 1.0;
    return v;
  }

  std::size_t dim() const noexcept { return amps_.size(); }
  Complex& operator[](std::size_t i) noexcept { return amps_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  double norm() const {
    double s = 0.0;
    for (const auto& z : amps_) s += std::norm(z);
    return std::sqrt(s);
  }

  StateVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw ValidationError("StateVector::normalized: zero vector");
    StateVector out(*this);
    for (auto& z : out.amps_) z /= n;
    return out;
  }

  bool is_normalized(double tol = 1e-12) const { return std::abs(norm() - 1.0) <= tol; }

  StateVector& operator+=(const StateVector& rhs) {
    if (rhs.dim() != dim()) throw DimensionError("StateVector: dimensions differ");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += rhs.amps_[i];
    return *this;
  }
  StateVector& operator-=(const StateVector& rhs) {
    if (rhs.dim() != dim()) throw DimensionError("StateVector: dimensions differ");
    for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= rhs.amps_[i];
    return *this;
  }
  StateVector& operator*=(Complex s) noexcept {
    for (auto& z : amps_) z *= s;
    return *this;
  }

  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend StateVector operator*(Complex s, StateVector a) { return a *= s; }
  friend StateVector operator*(StateVector a, Complex s) { return a *= s; }
  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amps_;
};

/// <u|v>, conjugate-linear in u.
inline Complex inner(const StateVector& u, const StateVector& v) {
  if (u.dim() != v.dim()) throw DimensionError("inner: dimensions differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

/// |u><v|
inline ComplexMatrix outer(const StateVector& u, const StateVector& v) {
  ComplexMatrix m(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

inline StateVector apply(const ComplexMatrix& m, const StateVector& v) {
  if (m.cols() != v.dim()) throw DimensionError("apply: dimensions differ");
  StateVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

class QubitRegister {
 public:
  explicit QubitRegister(std::size_t n_qubits) : n_(n_qubits) {
    if (n_qubits == 0 || n_qubits > 16) throw DimensionError("QubitRegister: need 1..16 qubits");
  }

  std::size_t n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }

  /// Index mask of qubit q.
  std::size_t mask(std::size_t q) const {
    if (q >= n_) throw IndexError("QubitRegister: qubit " + std::to_string(q) + " out of range");
    return std::size_t{1} << (n_ - 1 - q);
  }

  /// Union of masks; rejects duplicates and empty sets.
  std::size_t mask(std::span<const std::size_t> qubits) const {
    if (qubits.empty()) throw IndexError("QubitRegister: empty qubit set");
    std::size_t m = 0;
    for (auto q : qubits) {
      const std::size_t b = mask(q);
      if (m & b) throw IndexError("QubitRegister: repeated qubit " + std::to_string(q));
      m |= b;
    }
    return m;
  }

 private:
  std::size_t n_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline StateVector kron(const StateVector& a, const StateVector& b) {
  StateVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
  return out;
}

namespace detail {
inline void require_register_shape(const ComplexMatrix& m, const QubitRegister& reg, const char* what) {
  if (!m.is_square() || m.rows() != reg.dim())
    throw DimensionError(std::string(what) + ": matrix dimension does not match 2^n_qubits");
}
}  // namespace detail

/// Transposes the factor spanned by `subsystem_b`: out(i,j) = m(i',j') with the
/// B bits of i and j exchanged.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const QubitRegister& reg,
                                       std::span<const std::size_t> subsystem_b) {
  detail::require_register_shape(m, reg, "partial_transpose");
  const std::size_t bmask = reg.mask(subsystem_b);
  const std::size_t n = reg.dim();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t ip = (i & ~bmask) | (j & bmask);
      const std::size_t jp = (j & ~bmask) | (i & bmask);
      out(i, j) = m(ip, jp);
    }
  return out;
}

/// Traces out `traced`; the surviving qubits keep their relative order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const QubitRegister& reg,
                                   std::span<const std::size_t> traced) {
  detail::require_register_shape(m, reg, "partial_trace");
  const std::size_t tmask = reg.mask(traced);
  std::vector<std::size_t> kept_bits, traced_bits;
  for (std::size_t q = 0; q < reg.n_qubits(); ++q) (reg.mask(q) & tmask ? traced_bits : kept_bits).push_back(reg.mask(q));

  // Scatter a compact pattern (MSB first) over the given bit positions.
  auto scatter = [](std::size_t pattern, const std::vector<std::size_t>& bits) {
    std::size_t full = 0;
    for (std::size_t k = 0; k < bits.size(); ++k)
      if (pattern & (std::size_t{1} << (bits.size() - 1 - k))) full |= bits[k];
    return full;
  };

  const std::size_t kdim = std::size_t{1} << kept_bits.size();
  const std::size_t tdim = std::size_t{1} << traced_bits.size();
  std::vector<std::size_t> kept_full(kdim), traced_full(tdim);
  for (std::size_t a = 0; a < kdim; ++a) kept_full[a] = scatter(a, kept_bits);
  for (std::size_t t = 0; t < tdim; ++t) traced_full[t] = scatter(t, traced_bits);

  ComplexMatrix out(kdim, kdim);
  for (std::size_t a = 0; a < kdim; ++a)
    for (std::size_t b = 0; b < kdim; ++b) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < tdim; ++t) s += m(kept_full[a] | traced_full[t], kept_full[b] | traced_full[t]);
      out(a, b) = s;
    }
  return out;
}

}  // namespace rindler
