#pragma once

#include "polymul/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace polymul {

/// Dense row-major matrix over a polymul scalar. Operational and lifting
/// matrices here are at most a few hundred rows, so no sparse backend.
template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S{0}) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S{1};
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const S& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<S> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const S> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <Scalar S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: inner dimensions differ");
  Matrix<S> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const S& ail = a(i, l);
      if (ail == S{0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += ail * b(l, j);
    }
  }
  return c;
}

/// Row vector times matrix, v * M.
template <Scalar S>
std::vector<S> row_times(std::span<const S> v, const Matrix<S>& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("row_times: vector length differs from row count");
  std::vector<S> out(m.cols(), S{0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == S{0}) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * r[j];
  }
  return out;
}

/// Matrix times column vector, M * v.
template <Scalar S>
std::vector<S> times_column(const Matrix<S>& m, std::span<const S> v) {
  if (v.size() != m.cols()) throw std::invalid_argument("times_column: vector length differs from column count");
  std::vector<S> out(m.rows(), S{0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += r[j] * v[j];
  }
  return out;
}

template <Scalar S>
Matrix<S> transpose(const Matrix<S>& m) {
  Matrix<S> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <Scalar S>
Matrix<S> submatrix(const Matrix<S>& m, std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) {
  if (row0 + nrows > m.rows() || col0 + ncols > m.cols()) throw std::out_of_range("submatrix: block exceeds matrix");
  Matrix<S> out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = m(row0 + i, col0 + j);
  return out;
}

/// Kronecker product a (x) b; block (i, j) of the result is a(i, j) * b.
template <Scalar S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const S& aij = a(i, j);
      if (aij == S{0}) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  }
  return out;
}

template <Scalar S>
double max_abs(std::span<const S> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(to_double(x)));
  return m;
}

/// ||a - b||_inf / ||b||_inf, or the absolute difference when b vanishes.
template <Scalar S>
double relative_linf(std::span<const S> a, std::span<const S> b) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_linf: length mismatch");
  double diff = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(to_double(S{a[i] - b[i]})));
  const double scale = max_abs(b);
  return scale > 0.0 ? diff / scale : diff;
}

}  // namespace polymul
