#pragma once

// Brute-force reference paths used by tests and `verify`. Production code
// never calls into this header.

#include "polymul/bases.hpp"
#include "polymul/dgmul.hpp"
#include "polymul/matrix.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace polymul::oracle {

template <Scalar S>
struct MonomialPoly {
  std::vector<S> coeffs;  // coeffs[j] multiplies x^j
};

template <Scalar S>
MonomialPoly<S> convolve(const MonomialPoly<S>& a, const MonomialPoly<S>& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) throw std::invalid_argument("convolve: empty polynomial");
  std::vector<S> c(a.coeffs.size() + b.coeffs.size() - 1, S{0});
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return {std::move(c)};
}

namespace detail {

// Float inputs are carried at 50 significant digits so that the conversion
// path, not its rounding, is what gets compared; rationals stay exact.
template <Scalar S>
using Working = std::conditional_t<ScalarTraits<S>::exact, S, boost::multiprecision::cpp_bin_float_50>;

template <Scalar S>
std::vector<Working<S>> widen(std::span<const S> v) {
  return std::vector<Working<S>>(v.begin(), v.end());
}

template <Scalar S>
std::vector<S> narrow(const std::vector<Working<S>>& v) {
  std::vector<S> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if constexpr (ScalarTraits<S>::exact) out.push_back(x);
    else out.push_back(x.template convert_to<double>());
  }
  return out;
}

// Row j holds the monomial coefficients of phi_j.
template <Scalar S>
std::vector<std::vector<Working<S>>> monomial_rows(const RecurrenceBasis<S>& basis, std::size_t n) {
  using W = Working<S>;
  std::vector<std::vector<W>> rows(n + 1);
  rows[0] = {W{1}};
  const auto c = basis.coefficients(n);
  for (std::size_t j = 0; j < n; ++j) {
    const W a{c.alpha[j]};
    const W b{c.beta[j]};
    const W g{c.gamma[j]};
    std::vector<W> next(j + 2, W{0});
    for (std::size_t p = 0; p <= j; ++p) {
      next[p + 1] += rows[j][p];
      next[p] -= b * rows[j][p];
    }
    if (j > 0)
      for (std::size_t p = 0; p < j; ++p) next[p] -= g * rows[j - 1][p];
    for (auto& v : next) v /= a;
    rows[j + 1] = std::move(next);
  }
  return rows;
}

template <Scalar S>
std::vector<Working<S>> to_monomial_wide(const DgPolynomial<S>& p) {
  using W = Working<S>;
  const auto rows = monomial_rows(*p.basis(), p.degree());
  std::vector<W> m(p.degree() + 1, W{0});
  for (std::size_t j = 0; j <= p.degree(); ++j) {
    const W cj{p.coeffs()[j]};
    for (std::size_t i = 0; i <= j; ++i) m[i] += cj * rows[j][i];
  }
  return m;
}

// Solves c * B = m with B lower triangular.
template <Scalar S>
std::vector<Working<S>> from_monomial_wide(const RecurrenceBasis<S>& basis, const std::vector<Working<S>>& m) {
  using W = Working<S>;
  const std::size_t n = m.size() - 1;
  const auto rows = monomial_rows(basis, n);
  std::vector<W> c(n + 1, W{0});
  for (std::size_t ii = n + 1; ii-- > 0;) {
    W acc = m[ii];
    for (std::size_t j = ii + 1; j <= n; ++j) acc -= c[j] * rows[j][ii];
    if (rows[ii][ii] == 0) throw std::logic_error("from_monomial: singular basis transform");
    c[ii] = acc / rows[ii][ii];
  }
  return c;
}

}  // namespace detail

template <Scalar S>
MonomialPoly<S> to_monomial(const DgPolynomial<S>& p) {
  return {detail::narrow<S>(detail::to_monomial_wide(p))};
}

template <Scalar S>
DgPolynomial<S> from_monomial(const BasisPtr<S>& basis, const MonomialPoly<S>& m) {
  if (m.coeffs.empty()) throw std::invalid_argument("from_monomial: empty polynomial");
  return DgPolynomial<S>(basis, detail::narrow<S>(detail::from_monomial_wide(*basis, detail::widen<S>(m.coeffs))));
}

template <Scalar S>
DgPolynomial<S> mul_via_monomial(const DgPolynomial<S>& xi, const DgPolynomial<S>& psi) {
  if (!same_basis(xi.basis(), psi.basis())) throw std::invalid_argument("mul_via_monomial: factors use different bases");
  const auto a = detail::to_monomial_wide(xi);
  const auto b = detail::to_monomial_wide(psi);
  std::vector<detail::Working<S>> c(a.size() + b.size() - 1, detail::Working<S>{0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return DgPolynomial<S>(xi.basis(), detail::narrow<S>(detail::from_monomial_wide(*xi.basis(), c)));
}

struct PointwiseReport {
  double max_rel_dev = 0.0;
  double tol = 0.0;
  std::size_t points = 0;
  bool pass = true;
};

/// Compares eval(product, x) with the product of eval(factor, x) over all
/// points; deviation is max |diff| / max |reference|.
template <typename Poly, Scalar S>
PointwiseReport pointwise_check(const Poly& product, std::span<const Poly> factors, std::span<const S> points, double tol) {
  double diff = 0.0;
  double scale = 0.0;
  for (const auto& x : points) {
    S ref{1};
    for (const auto& f : factors) ref *= eval(f, x);
    const S got = eval(product, x);
    diff = std::max(diff, std::abs(to_double(S{got - ref})));
    scale = std::max(scale, std::abs(to_double(ref)));
  }
  PointwiseReport r;
  r.max_rel_dev = scale > 0.0 ? diff / scale : diff;
  r.tol = tol;
  r.points = points.size();
  r.pass = r.max_rel_dev <= tol;
  return r;
}

template <typename Poly, Scalar S>
PointwiseReport pointwise_check(const Poly& product, const std::vector<Poly>& factors, const std::vector<S>& points,
                                double tol) {
  return pointwise_check<Poly, S>(product, std::span<const Poly>(factors), std::span<const S>(points), tol);
}

/// Chebyshev points of the first kind mapped to [a, b].
inline std::vector<double> chebyshev_points(std::size_t count, double a, double b) {
  std::vector<double> x(count);
  const double pi = std::acos(-1.0);
  for (std::size_t i = 0; i < count; ++i)
    x[i] = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(pi * (2.0 * static_cast<double>(i) + 1.0) / (2.0 * static_cast<double>(count)));
  return x;
}

}  // namespace polymul::oracle
