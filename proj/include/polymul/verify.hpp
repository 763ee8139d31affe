#pragma once

// Seeded self-check: every production multiply/power path against the
// oracle layer. The report contains no timings, so a fixed seed gives
// byte-identical output.

#include "polymul/bases.hpp"
#include "polymul/bernstein.hpp"
#include "polymul/dgmul.hpp"
#include "polymul/lagrange.hpp"
#include "polymul/opmatrix_cache.hpp"
#include "polymul/oracle.hpp"
#include "polymul/random.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace polymul {

struct VerifyOptions {
  std::optional<std::string> basis;  // all registered bases plus Bernstein/Lagrange when unset
  std::size_t degree_max = 10;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  bool exact = false;  // rational arithmetic for bases that allow it
};

struct VerifyResult {
  std::string report;
  bool pass = true;
};

namespace detail {

struct CheckLine {
  std::string name;
  std::string subject;
  std::size_t trials = 0;
  double max_dev = 0.0;
  double tol = 0.0;

  bool pass() const { return max_dev <= tol; }
};

template <Scalar S>
std::vector<S> verify_newton_nodes(std::size_t count) {
  std::vector<S> nodes;
  for (std::size_t j = 0; j < count; ++j) {
    const auto num = 2 * static_cast<long long>(j) - static_cast<long long>(count - 1);
    nodes.push_back(ratio<S>(num, static_cast<long long>(count)));
  }
  return nodes;
}

template <Scalar S>
std::vector<S> sample_points(std::size_t count, double a, double b) {
  std::vector<S> pts;
  for (double x : oracle::chebyshev_points(count, a, b)) pts.push_back(ScalarTraits<S>::from_double(x));
  return pts;
}

template <Scalar S>
void verify_dg(const std::string& name, const VerifyOptions& opt, SeededRng& rng, std::vector<CheckLine>& out) {
  const std::size_t dmax = opt.degree_max;
  std::optional<std::vector<S>> nodes;
  if (name == "newton") nodes = verify_newton_nodes<S>(3 * dmax + 2);
  const auto basis = builtin_basis<S>(name, nodes);
  const double tol = ScalarTraits<S>::exact ? 0.0 : 1e-9;
  OpMatrixCache<S> cache;

  CheckLine mul{"dg-mul", name, opt.trials, 0.0, tol};
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const DgPolynomial<S> xi(basis, rng.coefficients<S>(rng.index(dmax + 1) + 1));
    const DgPolynomial<S> psi(basis, rng.coefficients<S>(rng.index(dmax + 1) + 1));
    const auto got = multiply(xi, psi, cache);
    const auto ref = oracle::mul_via_monomial(xi, psi);
    if (got.coeffs() == ref.coeffs()) continue;
    mul.max_dev = std::max(mul.max_dev, relative_linf(std::span<const S>(got.coeffs()), std::span<const S>(ref.coeffs())));
  }
  out.push_back(mul);

  const std::size_t pow_trials = std::max<std::size_t>(1, opt.trials / 10);
  const std::size_t pow_deg = std::max<std::size_t>(1, dmax / 2);
  const auto pts = sample_points<S>(30, -1.0, 1.0);
  CheckLine pw{"dg-pow", name, pow_trials, 0.0, tol};
  for (std::size_t t = 0; t < pow_trials; ++t) {
    const DgPolynomial<S> xi(basis, rng.coefficients<S>(rng.index(pow_deg) + 2));
    const int p = 2 + static_cast<int>(rng.index(2));
    const auto got = power(xi, p, cache);
    const std::vector<DgPolynomial<S>> factors(static_cast<std::size_t>(p), xi);
    pw.max_dev = std::max(pw.max_dev, oracle::pointwise_check(got, factors, pts, tol).max_rel_dev);
  }
  out.push_back(pw);
}

template <Scalar S>
void verify_bernstein(const VerifyOptions& opt, SeededRng& rng, std::vector<CheckLine>& out) {
  const std::size_t dmax = std::min<std::size_t>(opt.degree_max, 8);
  const double tol = ScalarTraits<S>::exact ? 0.0 : 1e-12;
  const auto pts = sample_points<S>(50, 0.0, 1.0);
  const S a{0};
  const S b{1};
  CheckLine mul{"bernstein-mul", "[0,1]", opt.trials, 0.0, tol};
  CheckLine pw{"bernstein-pow", "[0,1]", std::max<std::size_t>(1, opt.trials / 10), 0.0, tol};
  for (std::size_t t = 0; t < mul.trials; ++t) {
    const bernstein::BernsteinPolynomial<S> xi(a, b, rng.coefficients<S>(rng.index(dmax + 1) + 1));
    const bernstein::BernsteinPolynomial<S> psi(a, b, rng.coefficients<S>(rng.index(dmax + 1) + 1));
    const std::vector factors{xi, psi};
    mul.max_dev = std::max(mul.max_dev, oracle::pointwise_check(bernstein::multiply(xi, psi), factors, pts, tol).max_rel_dev);
  }
  for (std::size_t t = 0; t < pw.trials; ++t) {
    const bernstein::BernsteinPolynomial<S> xi(a, b, rng.coefficients<S>(rng.index(std::max<std::size_t>(1, dmax / 2)) + 2));
    const int p = 2 + static_cast<int>(rng.index(2));
    const std::vector factors(static_cast<std::size_t>(p), xi);
    pw.max_dev = std::max(pw.max_dev, oracle::pointwise_check(bernstein::power(xi, p), factors, pts, tol).max_rel_dev);
  }
  out.push_back(mul);
  out.push_back(pw);
}

// `count` nodes spread evenly through `nodes` by index, so a subset of
// Chebyshev nodes stays spread over the interval.
template <Scalar S>
std::vector<S> spread_subset(const std::vector<S>& nodes, std::size_t count) {
  std::vector<S> out;
  if (count == 1) return {nodes.front()};
  for (std::size_t i = 0; i < count; ++i) out.push_back(nodes[(i * (nodes.size() - 1) + (count - 1) / 2) / (count - 1)]);
  return out;
}

template <Scalar S>
void verify_lagrange(const VerifyOptions& opt, SeededRng& rng, std::vector<CheckLine>& out) {
  const std::size_t dmax = std::min<std::size_t>(opt.degree_max, 8);
  const double tol = ScalarTraits<S>::exact ? 0.0 : 1e-11;
  const auto pts = sample_points<S>(50, -1.0, 1.0);
  CheckLine mul{"lagrange-mul", "chebyshev-nodes", opt.trials, 0.0, tol};
  CheckLine pw{"lagrange-pow", "chebyshev-nodes", std::max<std::size_t>(1, opt.trials / 10), 0.0, tol};
  for (std::size_t t = 0; t < mul.trials; ++t) {
    const std::size_t n = rng.index(dmax + 1);
    const std::size_t m = rng.index(n + 1);
    const auto nodes = sample_points<S>(n + 1, -1.0, 1.0);
    const auto sub = spread_subset(nodes, m + 1);
    const lagrange::LagrangePolynomial<S> p(nodes, rng.coefficients<S>(n + 1));
    const lagrange::LagrangePolynomial<S> q(sub, rng.coefficients<S>(m + 1));
    const std::vector factors{p, q};
    mul.max_dev = std::max(mul.max_dev, oracle::pointwise_check(lagrange::multiply(p, q), factors, pts, tol).max_rel_dev);
  }
  for (std::size_t t = 0; t < pw.trials; ++t) {
    const std::size_t n = rng.index(std::max<std::size_t>(1, dmax / 2)) + 1;
    const lagrange::LagrangePolynomial<S> p(sample_points<S>(n + 1, -1.0, 1.0), rng.coefficients<S>(n + 1));
    const int e = 2 + static_cast<int>(rng.index(2));
    const std::vector factors(static_cast<std::size_t>(e), p);
    pw.max_dev = std::max(pw.max_dev, oracle::pointwise_check(lagrange::power(p, e), factors, pts, tol).max_rel_dev);
  }
  out.push_back(mul);
  out.push_back(pw);
}

}  // namespace detail

inline VerifyResult run_verify(const VerifyOptions& opt) {
  if (opt.basis && !find_registered(*opt.basis)) throw std::invalid_argument("verify: unknown basis '" + *opt.basis + "'");
  SeededRng rng(opt.seed);
  std::vector<detail::CheckLine> lines;
  std::vector<std::string> names;
  if (opt.basis) {
    names.push_back(*opt.basis);
  } else {
    for (const auto& info : kRegisteredBases) names.emplace_back(info.name);
  }
  for (const auto& name : names) {
    const bool exact = opt.exact && find_registered(name)->mode == ScalarMode::exact_rational;
    if (exact)
      detail::verify_dg<Rational>(name, opt, rng, lines);
    else
      detail::verify_dg<double>(name, opt, rng, lines);
  }
  if (!opt.basis) {
    // Float sample points keep these two checks in double arithmetic.
    detail::verify_bernstein<double>(opt, rng, lines);
    detail::verify_lagrange<double>(opt, rng, lines);
  }

  std::ostringstream os;
  os << "polymul verify seed=" << opt.seed << " trials=" << opt.trials << " degree-max=" << opt.degree_max
     << " mode=" << (opt.exact ? "exact" : "float64") << "\n";
  VerifyResult result;
  for (const auto& line : lines) {
    os << line.name << " " << line.subject << " trials=" << line.trials << " max-rel-dev=" << format_double(line.max_dev)
       << " tol=" << format_double(line.tol) << " " << (line.pass() ? "PASS" : "FAIL") << "\n";
    result.pass = result.pass && line.pass();
  }
  os << "result " << (result.pass ? "PASS" : "FAIL") << "\n";
  result.report = os.str();
  return result;
}

}  // namespace polymul
