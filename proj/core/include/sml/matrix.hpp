#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sml/error.hpp"
#include "sml/number.hpp"

namespace sml {

/// Dense row-major matrix over an exact field (Rational, Complex, SymExpr).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : data_) {
      if (!sml::is_zero(v)) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  template <class F>
  auto map(F f) const {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (sml::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (sml::is_zero(b(k, j))) continue;
          out(i, j) += aik * b(k, j);
        }
      }
    }
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  Matrix operator-() const {
    Matrix out = *this;
    for (auto& v : out.data_) v = -v;
    return out;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& v : a.data_) v = s * v;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!sml::is_zero((*this)(i, j)) && !sml::is_zero(v[j])) out[i] += (*this)(i, j) * v[j];
      }
    }
    return out;
  }

 private:
  void same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

inline std::size_t pivot_cost(const Rational&) { return 0; }
inline std::size_t pivot_cost(const Complex&) { return 0; }

/// Reduced row echelon form with the determinant of the row operations.
template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_columns;
  T scale{1};  // det(original) = scale * det(reduced) for square input
};

template <class T>
Echelon<T> row_reduce(Matrix<T> m) {
  Echelon<T> out;
  std::size_t row = 0;
  T scale(1);
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    std::size_t best_cost = 0;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (sml::is_zero(m(r, col))) continue;
      std::size_t cost = pivot_cost(m(r, col));
      if (best == m.rows() || cost < best_cost) {
        best = r;
        best_cost = cost;
      }
    }
    if (best == m.rows()) continue;
    if (best != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(row, j));
      scale = -scale;
    }
    T pivot = m(row, col);
    scale = scale * pivot;
    T inv = T(1) / pivot;
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sml::is_zero(m(r, col))) continue;
      T factor = m(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!sml::is_zero(m(row, j))) m(r, j) = m(r, j) - factor * m(row, j);
      }
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  out.scale = scale;
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return row_reduce(m).pivot_columns.size();
}

template <class T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  if (m.rows() == 0) return T(1);
  auto e = row_reduce(m);
  if (e.pivot_columns.size() < m.rows()) return T(0);
  return e.scale;
}

/// Inverse, or nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  auto e = row_reduce(std::move(aug));
  if (e.pivot_columns.size() < n || (n > 0 && e.pivot_columns[n - 1] != n - 1)) return std::nullopt;
  Matrix<T> inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  }
  return inv;
}

/// Basis of {v : m v = 0}, one free variable set to 1 per basis vector.
template <class T>
std::vector<std::vector<T>> nullspace(const Matrix<T>& m) {
  auto e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) v[e.pivot_columns[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solution x of m x = b, or nullopt when inconsistent (free variables set to 0).
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  if (b.size() != m.rows()) throw DimensionError("right-hand side length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = row_reduce(std::move(aug));
  if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols()) return std::nullopt;
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) x[e.pivot_columns[r]] = e.reduced(r, m.cols());
  return x;
}

}  // namespace sml
