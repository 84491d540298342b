#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "scv/approx.hpp"
#include "scv/error.hpp"
#include "scv/scalar.hpp"

namespace scv {

// Backend traits: produce constants with the same precision as a prototype.
inline Scalar from_int(long v, const Scalar&) { return Scalar(v); }
inline ApproxScalar from_int(long v, const ApproxScalar& proto) { return ApproxScalar(v, proto.precision_bits()); }
inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(const ApproxScalar& s) { return s.is_zero(); }

/// Dense row-major matrix over a field backend.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DomainError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n, const T& proto = T()) {
    Matrix m(n, n, from_int(0, proto));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int(1, proto);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& entries) {
    const T proto = entries.empty() ? T() : entries.front();
    Matrix m(entries.size(), entries.size(), from_int(0, proto));
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw DomainError("matrix index out of range");
    return (*this)(i, j);
  }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  T trace() const {
    require_square("trace");
    T s = zero();
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
  }

  /// Column j as a rows×1 matrix.
  Matrix column(std::size_t j) const {
    Matrix c(rows_, 1, zero());
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  bool is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }
  bool is_diagonal() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !is_zero((*this)(i, j))) return false;
    return true;
  }
  bool is_zero_matrix() const {
    for (const auto& v : data_)
      if (!is_zero(v)) return false;
    return true;
  }
  std::vector<T> diagonal_entries() const {
    require_square("diagonal");
    std::vector<T> d;
    for (std::size_t i = 0; i < rows_; ++i) d.push_back((*this)(i, i));
    return d;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("dimension mismatch in matrix product");
    Matrix c(a.rows_, b.cols_, a.zero());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!(a.data_[k] == b.data_[k])) return false;
    return true;
  }

  T zero() const { return data_.empty() ? T() : from_int(0, data_.front()); }

  void require_square(const char* what) const {
    if (!square()) throw DomainError(std::string("square matrix required for ") + what);
  }

 private:
  void require_same(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError(std::string("dimension mismatch in matrix ") + op);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ExactMatrix = Matrix<Scalar>;
using ApproxMatrix = Matrix<ApproxScalar>;

/// Determinant by fraction-free-in-spirit Gaussian elimination over the field.
template <class T>
T determinant(Matrix<T> m) {
  m.require_square("determinant");
  const std::size_t n = m.rows();
  T det = from_int(1, m.zero());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = n;
    for (std::size_t r = c; r < n; ++r)
      if (!is_zero(m(r, c))) {
        pivot = r;
        break;
      }
    if (pivot == n) return m.zero();
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(pivot, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m(r, c))) continue;
      T f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Characteristic polynomial det(xI − A) by Faddeev–LeVerrier; returns
/// coefficients c[0..n] with c[n] = 1 (lowest degree first).
template <class T>
std::vector<T> characteristic_polynomial(const Matrix<T>& a) {
  a.require_square("characteristic polynomial");
  const std::size_t n = a.rows();
  const T zero = a.zero();
  std::vector<T> c(n + 1, zero);
  c[n] = from_int(1, zero);
  Matrix<T> m(n, n, zero);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    T t = (a * m).trace();
    c[n - k] = -t / from_int(static_cast<long>(k), zero);
  }
  return c;
}

/// Element-wise conversion between backends.
template <class U, class T, class F>
Matrix<U> map_matrix(const Matrix<T>& m, F&& f) {
  Matrix<U> out(m.rows(), m.cols(), f(m.rows() && m.cols() ? m(0, 0) : T()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

inline ApproxMatrix approximate(const ExactMatrix& m, long bits) {
  return map_matrix<ApproxScalar>(m, [bits](const Scalar& s) { return approximate(s, bits); });
}

}  // namespace scv
