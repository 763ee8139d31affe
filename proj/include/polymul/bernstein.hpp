#pragma once

// Bernstein polynomials on [a, b]:
//   b_{j,n}(x) = C(n,j) (x-a)^j (b-x)^(n-j) / (b-a)^n.
// Products go through degree elevation: with T_{m,m+n} the lifting matrix,
//   xi * psi = xi . Gamma_{psi,m+n},  Gamma[i][j] = psi_{j-i} T_{m,m+n}[i][j].
// Coefficient vectors are rows throughout.

#include "polymul/matrix.hpp"
#include "polymul/scalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polymul::bernstein {

/// Exact C(n, k) from a memoized Pascal triangle.
inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return BigInt(0);
  static std::mutex mutex;
  static std::vector<std::vector<BigInt>> rows{{BigInt(1)}};
  std::lock_guard lock(mutex);
  while (rows.size() <= n) {
    const auto& last = rows.back();
    std::vector<BigInt> next(last.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t i = 1; i < last.size(); ++i) next[i] = last[i - 1] + last[i];
    rows.push_back(std::move(next));
  }
  return rows[n][k];
}

template <Scalar S>
class BernsteinPolynomial {
 public:
  BernsteinPolynomial(S a, S b, std::vector<S> coeffs) : a_(std::move(a)), b_(std::move(b)), coeffs_(std::move(coeffs)) {
    if (!(a_ < b_)) throw std::invalid_argument("BernsteinPolynomial: interval must satisfy a < b");
    if (coeffs_.empty()) throw std::invalid_argument("BernsteinPolynomial: coefficient vector must not be empty");
  }

  const S& a() const { return a_; }
  const S& b() const { return b_; }
  const std::vector<S>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }

 private:
  S a_;
  S b_;
  std::vector<S> coeffs_;
};

template <Scalar S>
std::vector<S> bernstein_basis_eval(std::size_t n, const S& a, const S& b, const S& x) {
  if (!(a < b)) throw std::invalid_argument("bernstein_basis_eval: degenerate interval");
  const S width = b - a;
  const S u = (x - a) / width;
  const S v = (b - x) / width;
  // Powers of u and v instead of pow() so exact mode stays exact.
  std::vector<S> up(n + 1, S{1});
  std::vector<S> vp(n + 1, S{1});
  for (std::size_t i = 1; i <= n; ++i) {
    up[i] = up[i - 1] * u;
    vp[i] = vp[i - 1] * v;
  }
  std::vector<S> out(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    out[j] = ScalarTraits<S>::from_rational(Rational(binomial(n, j))) * up[j] * vp[n - j];
  return out;
}

template <Scalar S>
S eval(const BernsteinPolynomial<S>& p, const S& x) {
  const auto basis = bernstein_basis_eval(p.degree(), p.a(), p.b(), x);
  S acc{0};
  for (std::size_t j = 0; j < basis.size(); ++j) acc += p.coeffs()[j] * basis[j];
  return acc;
}

template <Scalar S>
struct BernsteinLift {
  std::size_t n = 0;
  std::size_t m = 0;
  Matrix<S> matrix;  // (n+1) x (m+1), upper triangular
};

/// Exact entry of T_{n,m}, 0-based: C(n,i) C(m-n, j-i) / C(m, j) for i <= j <= i+m-n.
/// (The 1-based form is T[i,j] = C(n,i-1) C(m-n,j-i) / C(m,j-1).)
inline Rational lift_entry(std::size_t n, std::size_t m, std::size_t i, std::size_t j) {
  if (j < i || j - i > m - n) return Rational(0);
  return Rational(binomial(n, i) * binomial(m - n, j - i), binomial(m, j));
}

namespace detail {

template <Scalar S>
Matrix<S> lift_matrix_uncached(std::size_t n, std::size_t m) {
  Matrix<S> t(n + 1, m + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= i + (m - n); ++j) t(i, j) = ScalarTraits<S>::from_rational(lift_entry(n, m, i, j));
  return t;
}

}  // namespace detail

/// T_{n,m}, cached per (n, m). Entries are formed exactly and rounded once in
/// float mode, so the central symmetry holds bit-for-bit.
template <Scalar S>
BernsteinLift<S> lift_matrix(std::size_t n, std::size_t m) {
  if (m <= n) throw std::invalid_argument("bernstein lift_matrix: need m > n (n=" + std::to_string(n) +
                                          ", m=" + std::to_string(m) + ")");
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const Matrix<S>>> cache;
  std::shared_ptr<const Matrix<S>> t;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({n, m}); it != cache.end()) t = it->second;
  }
  if (!t) {
    t = std::make_shared<const Matrix<S>>(detail::lift_matrix_uncached<S>(n, m));
    std::lock_guard lock(mutex);
    cache.emplace(std::pair{n, m}, t);
  }
  return BernsteinLift<S>{n, m, *t};
}

/// Degree elevation: d = c . T_{n,m}.
template <Scalar S>
BernsteinPolynomial<S> lift(const BernsteinPolynomial<S>& p, std::size_t m) {
  const auto t = lift_matrix<S>(p.degree(), m);
  return BernsteinPolynomial<S>(p.a(), p.b(), row_times(std::span<const S>(p.coeffs()), t.matrix));
}

/// Coefficients of b_{k,m} * b_{j,n} in the degree m+n basis: a single
/// nonzero C(m,k) C(n,j) / C(m+n,k+j) at position k+j.
template <Scalar S>
std::vector<S> element_product_row(std::size_t j, std::size_t k, std::size_t n, std::size_t m) {
  if (j > n || k > m) throw std::out_of_range("bernstein element_product_row: index out of range");
  std::vector<S> row(n + m + 1, S{0});
  row[k + j] = ScalarTraits<S>::from_rational(Rational(binomial(m, k) * binomial(n, j), binomial(m + n, k + j)));
  return row;
}

/// H~_{n,k} for the Bernstein basis: rows j = 0..n of element_product_row.
template <Scalar S>
Matrix<S> element_product_matrix(std::size_t k, std::size_t n, std::size_t m) {
  Matrix<S> h(n + 1, n + m + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const auto row = element_product_row<S>(j, k, n, m);
    std::copy(row.begin(), row.end(), h.row(j).begin());
  }
  return h;
}

/// Gamma_{psi, m+n}: (m+1) x (m+n+1), entry [i][j] = psi_{j-i} T_{m,m+n}[i][j]
/// with psi_{j-i} = 0 outside 0 <= j-i <= deg(psi).
template <Scalar S>
Matrix<S> gamma_matrix(std::span<const S> psi, std::size_t m) {
  if (psi.empty()) throw std::invalid_argument("gamma_matrix: empty coefficient vector");
  const std::size_t n = psi.size() - 1;
  Matrix<S> g(m + 1, m + n + 1);
  if (n == 0) {
    for (std::size_t i = 0; i <= m; ++i) g(i, i) = psi[0];
    return g;
  }
  const auto t = lift_matrix<S>(m, m + n);
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = i; j <= i + n; ++j) g(i, j) = psi[j - i] * t.matrix(i, j);
  return g;
}

enum class BernsteinRoute {
  gamma_of_right,  // c = xi . Gamma_{psi, m+n}
  gamma_of_left,   // c = psi . Gamma_{xi, m+n}
};

template <Scalar S>
BernsteinPolynomial<S> multiply(const BernsteinPolynomial<S>& xi, const BernsteinPolynomial<S>& psi,
                                BernsteinRoute route = BernsteinRoute::gamma_of_right) {
  // The product formula only holds when both factors live on the same interval.
  if (!(xi.a() == psi.a() && xi.b() == psi.b())) throw std::invalid_argument("bernstein multiply: interval mismatch");
  std::vector<S> c;
  if (route == BernsteinRoute::gamma_of_right) {
    c = row_times(std::span<const S>(xi.coeffs()), gamma_matrix(std::span<const S>(psi.coeffs()), xi.degree()));
  } else {
    c = row_times(std::span<const S>(psi.coeffs()), gamma_matrix(std::span<const S>(xi.coeffs()), psi.degree()));
  }
  return BernsteinPolynomial<S>(xi.a(), xi.b(), std::move(c));
}

/// xi^p = xi . Gamma_{xi,2n} . Gamma_{xi,3n} ... Gamma_{xi,pn}.
template <Scalar S>
BernsteinPolynomial<S> power(const BernsteinPolynomial<S>& xi, int p) {
  if (p < 1) throw std::invalid_argument("bernstein power: exponent must be >= 1, got " + std::to_string(p));
  BernsteinPolynomial<S> acc = xi;
  for (int j = 2; j <= p; ++j) acc = multiply(acc, xi);
  return acc;
}

}  // namespace polymul::bernstein
