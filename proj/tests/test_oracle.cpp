#include <gtest/gtest.h>

#include "test_support.hpp"

#include <cmath>

using namespace polymul;
using namespace polymul::oracle;
using polymul::testing::allows_exact;
using polymul::testing::q;
using polymul::testing::registered_names;
using polymul::testing::test_basis;

TEST(Convolve, Examples) {
  EXPECT_EQ(convolve(MonomialPoly<Rational>{{q(1), q(1)}}, MonomialPoly<Rational>{{q(1), q(1)}}).coeffs,
            (std::vector<Rational>{q(1), q(2), q(1)}));
  EXPECT_EQ(convolve(MonomialPoly<Rational>{{q(2)}}, MonomialPoly<Rational>{{q(-1), q(0), q(5)}}).coeffs,
            (std::vector<Rational>{q(-2), q(0), q(10)}));
}

TEST(Convolve, RandomMatchesDgmulInMonomialBasis) {
  SeededRng rng(40);
  const auto mono = builtin_basis<Rational>("monomial");
  for (int t = 0; t < 10; ++t) {
    const auto a = rng.coefficients<Rational>(7);
    const auto b = rng.coefficients<Rational>(8);
    const auto c = convolve(MonomialPoly<Rational>{a}, MonomialPoly<Rational>{b});
    EXPECT_EQ(c.coeffs, multiply(DgPolynomial<Rational>(mono, a), DgPolynomial<Rational>(mono, b)).coeffs());
  }
}

TEST(MulViaMonomial, Examples) {
  const auto mono = builtin_basis<Rational>("monomial");
  SeededRng rng(41);
  const auto a = rng.coefficients<Rational>(5);
  const auto b = rng.coefficients<Rational>(4);
  EXPECT_EQ(mul_via_monomial(DgPolynomial<Rational>(mono, a), DgPolynomial<Rational>(mono, b)).coeffs(),
            convolve(MonomialPoly<Rational>{a}, MonomialPoly<Rational>{b}).coeffs);

  const auto cheb = builtin_basis<Rational>("chebyshev-t");
  const DgPolynomial<Rational> t1(cheb, {q(0), q(1)});
  EXPECT_EQ(mul_via_monomial(t1, t1).coeffs(), (std::vector<Rational>{q(1, 2), q(0), q(1, 2)}));

  const auto leg = builtin_basis<Rational>("legendre");
  const DgPolynomial<Rational> xi(leg, {q(3), q(-1, 2), q(7, 4)});
  const DgPolynomial<Rational> one(leg, {q(1)});
  EXPECT_EQ(mul_via_monomial(xi, one).coeffs(), xi.coeffs());
  const DgPolynomial<Rational> one_padded(leg, {q(1), q(0)});
  EXPECT_EQ(mul_via_monomial(xi, one_padded).coeffs(), (std::vector<Rational>{q(3), q(-1, 2), q(7, 4), q(0)}));

  EXPECT_THROW(mul_via_monomial(xi, DgPolynomial<Rational>(cheb, {q(1)})), std::invalid_argument);
}

TEST(MulViaMonomial, HermiteOrthonormalMatchesDgmul) {
  SeededRng rng(42);
  const auto b = builtin_basis<double>("hermite-orthonormal");
  const DgPolynomial<double> xi(b, rng.coefficients<double>(5));
  const DgPolynomial<double> psi(b, rng.coefficients<double>(4));
  const auto want = mul_via_monomial(xi, psi).coeffs();
  const auto got = multiply(xi, psi).coeffs();
  ASSERT_EQ(got.size(), want.size());
  double scale = 0;
  for (double v : want) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12 * scale);
}

TEST(RoundTrip, ExactForRationalBases) {
  SeededRng rng(43);
  for (const auto& name : registered_names()) {
    if (!allows_exact(name)) continue;
    const auto b = test_basis<Rational>(name);
    for (std::size_t deg = 0; deg <= 16; deg += 4) {
      const DgPolynomial<Rational> p(b, rng.coefficients<Rational>(deg + 1));
      EXPECT_EQ(from_monomial(b, to_monomial(p)).coeffs(), p.coeffs()) << name << " deg " << deg;
    }
  }
}

// Float round-trip error is dominated by rounding the monomial coefficients
// m. For rational-capable bases the deviation is divided by
// sum_i |S[j][i]| |m_i| with S the exact inverse transform; the two float-only
// bases are checked with the plain relative bound.
TEST(RoundTrip, FloatWithinTolerance) {
  SeededRng rng(44);
  for (const auto& name : registered_names()) {
    const auto b = test_basis<double>(name);
    const bool exact_capable = allows_exact(name);
    const auto br = exact_capable ? test_basis<Rational>(name) : BasisPtr<Rational>{};
    for (std::size_t deg = 0; deg <= 16; deg += 2) {
      const DgPolynomial<double> p(b, rng.coefficients<double>(deg + 1));
      const auto m = to_monomial(p).coeffs;
      const auto back = from_monomial(b, to_monomial(p)).coeffs();
      ASSERT_EQ(back.size(), p.coeffs().size());
      std::vector<double> scale(back.size(), 0.0);
      if (exact_capable) {
        for (std::size_t i = 0; i < m.size(); ++i) {
          std::vector<Rational> e(deg + 1, q(0));
          e[i] = q(1);
          const auto col = from_monomial(br, MonomialPoly<Rational>{e}).coeffs();
          for (std::size_t j = 0; j < col.size(); ++j) scale[j] += std::abs(to_double(col[j])) * std::abs(m[i]);
        }
      } else {
        double top = 0;
        for (double v : p.coeffs()) top = std::max(top, std::abs(v));
        std::fill(scale.begin(), scale.end(), top);
      }
      for (std::size_t j = 0; j < back.size(); ++j)
        EXPECT_LE(std::abs(back[j] - p.coeffs()[j]), 1e-11 * scale[j]) << name << " deg " << deg << " j " << j;
    }
  }
}

TEST(PointwiseCheck, ExactPipelineHasZeroDeviation) {
  SeededRng rng(45);
  const auto b = builtin_basis<Rational>("chelyshkov2");
  const DgPolynomial<Rational> xi(b, rng.coefficients<Rational>(6));
  const DgPolynomial<Rational> psi(b, rng.coefficients<Rational>(5));
  std::vector<Rational> pts;
  for (int s = -10; s <= 10; ++s) pts.push_back(q(s, 7));
  const auto rep = pointwise_check(multiply(xi, psi), std::vector{xi, psi}, pts, 0.0);
  EXPECT_EQ(rep.max_rel_dev, 0.0);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.points, pts.size());
}

TEST(PointwiseCheck, BernsteinDegree8AndNegativeControl) {
  SeededRng rng(46);
  const bernstein::BernsteinPolynomial<double> a(0.0, 1.0, rng.coefficients<double>(9));
  const bernstein::BernsteinPolynomial<double> b(0.0, 1.0, rng.coefficients<double>(9));
  const auto c = bernstein::multiply(a, b);
  const auto pts = chebyshev_points(50, 0.0, 1.0);
  const auto rep = pointwise_check(c, std::vector{a, b}, pts, 1e-12);
  EXPECT_TRUE(rep.pass) << rep.max_rel_dev;
  EXPECT_LE(rep.max_rel_dev, 1e-12);

  auto bad = c.coeffs();
  bad[7] += 1e-3;
  const bernstein::BernsteinPolynomial<double> corrupted(0.0, 1.0, bad);
  const auto neg = pointwise_check(corrupted, std::vector{a, b}, pts, 1e-12);
  EXPECT_FALSE(neg.pass);
  EXPECT_GT(neg.max_rel_dev, 1e-12);
}

TEST(ChebyshevPoints, InsideIntervalAndDistinct) {
  const auto x = chebyshev_points(9, -2.0, 3.0);
  ASSERT_EQ(x.size(), 9u);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_GT(x[i], -2.0);
    EXPECT_LT(x[i], 3.0);
    if (i > 0) {
      EXPECT_LT(x[i], x[i - 1]);
    }
  }
  EXPECT_NEAR(x[4], 0.5, 1e-15);
}
