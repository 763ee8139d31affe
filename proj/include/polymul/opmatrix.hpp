#pragma once

// Operational matrices H_{n,k} of a degree-graded basis: row r holds the
// coefficients of phi_r(x) * phi_k(x) in phi_0 .. phi_{n+k}, so
//
//   phi_k(x) [phi_0(x), ..., phi_n(x)]^T = H_{n,k} [phi_0(x), ..., phi_{n+k}(x)]^T.
//
// Row r is nonzero only in columns |k-r| .. k+r (0-based). Entries outside
// that band are never written and stay exactly zero.

#include "polymul/bases.hpp"
#include "polymul/matrix.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace polymul {

template <Scalar S>
struct OpMatrix {
  BasisPtr<S> basis;
  std::size_t n = 0;
  std::size_t k = 0;
  Matrix<S> entries;  // (n+1) x (n+k+1)
};

/// First and last possibly-nonzero column of row r in H_{n,k}.
inline std::size_t band_first(std::size_t k, std::size_t r) { return k > r ? k - r : r - k; }
inline std::size_t band_last(std::size_t k, std::size_t r) { return k + r; }

namespace detail {

// Row r >= 1 of H_{.,k}. The closed-form indices are 1-based (i = r+1, j = c+1):
//   H[i,j] = ( alpha_{j-2} H[i-1,j-1] + (beta_{j-1} - beta_{i-2}) H[i-1,j]
//            + gamma_j H[i-1,j+1] - gamma_{i-2} H[i-2,j] ) / alpha_{i-2}
// which in 0-based storage reads
//   H[r][c] = ( alpha_{c-1} H[r-1][c-1] + (beta_c - beta_{r-1}) H[r-1][c]
//            + gamma_{c+1} H[r-1][c+1] - gamma_{r-1} H[r-2][c] ) / alpha_{r-1}.
// References outside the band of the referenced row are zero; coefficients
// are only read where their partner entry is in band, so a Newton basis
// needs exactly n+k nodes.
template <Scalar S>
void compute_row(const RecurrenceCoefficients<S>& c, std::size_t k, std::size_t r, std::span<const S> prev,
                 std::span<const S> prev2, std::span<S> out) {
  const std::size_t p_first = band_first(k, r - 1);
  const std::size_t p_last = band_last(k, r - 1);
  auto in_prev = [&](std::size_t col) { return col >= p_first && col <= p_last; };
  const bool has_prev2 = r >= 2;
  const std::size_t q_first = has_prev2 ? band_first(k, r - 2) : 1;
  const std::size_t q_last = has_prev2 ? band_last(k, r - 2) : 0;

  for (std::size_t col = band_first(k, r); col <= band_last(k, r); ++col) {
    S v{0};
    if (col >= 1 && in_prev(col - 1)) v += c.alpha[col - 1] * prev[col - 1];
    if (in_prev(col)) v += (c.beta[col] - c.beta[r - 1]) * prev[col];
    if (in_prev(col + 1)) v += c.gamma[col + 1] * prev[col + 1];
    if (has_prev2 && col >= q_first && col <= q_last) v -= c.gamma[r - 1] * prev2[col];
    v /= c.alpha[r - 1];
    out[col] = v == S{0} ? S{0} : v;  // no signed zeros
  }
}

template <Scalar S>
std::size_t coefficient_count(std::size_t n, std::size_t k) {
  return n == 0 ? 0 : n + k;
}

}  // namespace detail

/// H_{n,k} built top-down from the unit first row.
template <Scalar S>
OpMatrix<S> build_H(const BasisPtr<S>& basis, std::size_t n, std::size_t k) {
  if (!basis) throw std::invalid_argument("build_H: null basis");
  OpMatrix<S> h{basis, n, k, Matrix<S>(n + 1, n + k + 1)};
  h.entries(0, k) = S{1};
  if (n == 0) return h;
  const auto c = basis->coefficients(detail::coefficient_count<S>(n, k));
  for (std::size_t r = 1; r <= n; ++r) {
    std::span<const S> prev2 = r >= 2 ? std::span<const S>(h.entries.row(r - 2)) : std::span<const S>{};
    detail::compute_row(c, k, r, std::span<const S>(h.entries.row(r - 1)), prev2, h.entries.row(r));
  }
  return h;
}

/// H~_{n,k}: H_{n,k} followed by m-k zero columns.
template <Scalar S>
Matrix<S> pad_to_Htilde(const OpMatrix<S>& h, std::size_t m) {
  if (m < h.k) throw std::invalid_argument("pad_to_Htilde: m = " + std::to_string(m) + " < k = " + std::to_string(h.k));
  Matrix<S> out(h.n + 1, h.n + m + 1);
  for (std::size_t i = 0; i <= h.n; ++i)
    for (std::size_t j = 0; j < h.entries.cols(); ++j) out(i, j) = h.entries(i, j);
  return out;
}

/// H_{n-1,k} -> H_{n,k} with `last_row` (length n+k+1) as the new row.
template <Scalar S>
OpMatrix<S> append_row(const OpMatrix<S>& prev, std::span<const S> last_row) {
  const std::size_t n = prev.n + 1;
  const std::size_t k = prev.k;
  if (last_row.size() != n + k + 1) throw std::invalid_argument("append_row: row length mismatch");
  OpMatrix<S> h{prev.basis, n, k, Matrix<S>(n + 1, n + k + 1)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < prev.entries.cols(); ++j) h.entries(i, j) = prev.entries(i, j);
  std::copy(last_row.begin(), last_row.end(), h.entries.row(n).begin());
  return h;
}

/// Only the new last row of H_{n,k} (at most 2k+1 nonzeros).
template <Scalar S>
std::vector<S> next_row(const OpMatrix<S>& prev) {
  const std::size_t n = prev.n + 1;
  const std::size_t k = prev.k;
  const auto c = prev.basis->coefficients(detail::coefficient_count<S>(n, k));
  // Widen the two previous rows by one column so every span has length n+k+1.
  std::vector<S> r1(n + k + 1, S{0});
  std::vector<S> r2(n + k + 1, S{0});
  std::copy(prev.entries.row(n - 1).begin(), prev.entries.row(n - 1).end(), r1.begin());
  if (n >= 2) std::copy(prev.entries.row(n - 2).begin(), prev.entries.row(n - 2).end(), r2.begin());
  std::vector<S> row(n + k + 1, S{0});
  detail::compute_row(c, k, n, std::span<const S>(r1), std::span<const S>(r2), std::span<S>(row));
  return row;
}

/// H_{n-1,k} -> H_{n,k}; only the new last row is computed.
template <Scalar S>
OpMatrix<S> extend_H(const OpMatrix<S>& prev) {
  if (!prev.basis) throw std::invalid_argument("extend_H: null basis");
  const auto row = next_row(prev);
  return append_row(prev, std::span<const S>(row));
}

}  // namespace polymul
