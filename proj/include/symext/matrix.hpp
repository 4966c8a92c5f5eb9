#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace symext {

/// Row-major dense matrix. Arithmetic and elimination require T to be a
/// field element type constructible from int (Rational, RatFunc); the pure
/// container operations work for any regular T.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) fail(ErrorCode::FrameMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols, T(0)); }
  static Matrix identity(std::size_t n) {
    Matrix m = zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == T(0))) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
    return r;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  friend Matrix operator*(const T& c, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.data_) x = c * x;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::FrameMismatch, "matrix product shape mismatch");
    Matrix r = zero(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
      }
    return r;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) fail(ErrorCode::FrameMismatch, "matrix-vector shape mismatch");
    std::vector<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) r[i] = r[i] + a(i, k) * v[k];
    return r;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorCode::FrameMismatch, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
struct RowEchelon {
  Matrix<T> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  T determinant_factor;             // product of pivots times sign, for square input
};

/// Gauss-Jordan elimination over a field.
template <class T>
RowEchelon<T> row_reduce(Matrix<T> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  T det(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == T(0)) ++p;
    if (p == rows) {
      det = T(0);
      continue;
    }
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
      det = -det;
    }
    T piv = m(r, c);
    det = det * piv;
    T inv = T(1) / piv;
    for (std::size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == T(0)) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  if (r < rows) det = T(0);
  return {std::move(m), std::move(pivots), det};
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return row_reduce(m).pivots.size();
}

template <class T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::FrameMismatch, "determinant of a non-square matrix");
  if (m.rows() == 0) return T(1);
  return row_reduce(m).determinant_factor;
}

/// Basis of the right kernel, one column per free variable.
template <class T>
Matrix<T> nullspace(const Matrix<T>& m) {
  auto ech = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<T> basis = Matrix<T>::zero(cols, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = T(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) basis(ech.pivots[r], k) = -ech.reduced(r, free[k]);
  }
  return basis;
}

/// One solution of m x = b, or nullopt if inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  Matrix<T> aug(m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t i = 0; i < m.rows(); ++i) aug(i, m.cols()) = b[i];
  auto ech = row_reduce(aug);
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    if (ech.pivots[r] == m.cols()) return std::nullopt;
    x[ech.pivots[r]] = ech.reduced(r, m.cols());
  }
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) fail(ErrorCode::FrameMismatch, "inverse of a non-square matrix");
  Matrix<T> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<T>::identity(n));
  auto ech = row_reduce(aug);
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1)
    fail(ErrorCode::ZeroDenominator, "inverse of a singular matrix");
  return ech.reduced.block(0, n, n, n);
}

}  // namespace symext
