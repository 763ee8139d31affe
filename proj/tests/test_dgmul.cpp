#include <gtest/gtest.h>

#include "test_support.hpp"

#include <cmath>

using namespace polymul;
using polymul::testing::q;
using polymul::testing::registered_names;
using polymul::testing::test_basis;

namespace {

template <Scalar S>
std::vector<S> row_of(const Matrix<S>& m, std::size_t i) {
  auto r = m.row(i);
  return {r.begin(), r.end()};
}

}  // namespace

TEST(DgPolynomial, RejectsEmptyAndNull) {
  EXPECT_THROW(DgPolynomial<double>(builtin_basis<double>("monomial"), {}), std::invalid_argument);
  EXPECT_THROW(DgPolynomial<double>(nullptr, {1.0}), std::invalid_argument);
  const DgPolynomial<double> p(builtin_basis<double>("monomial"), {1.0, 0.0, 0.0});
  EXPECT_EQ(p.degree(), 2u);
}

TEST(ProductOperator, Chelyshkov2Symbolic) {
  // psi = e_0, e_1, e_2 picks out H~_{1,0}, H~_{1,1}, H~_{1,2}.
  const auto b = builtin_basis<Rational>("chelyshkov2");
  auto op_for = [&](std::vector<Rational> psi) { return build_product_operator(DgPolynomial<Rational>(b, psi), 1).matrix; };
  const auto e0 = op_for({q(1), q(0), q(0)});
  const auto e1 = op_for({q(0), q(1), q(0)});
  const auto e2 = op_for({q(0), q(0), q(1)});
  EXPECT_EQ(row_of(e0, 1), (std::vector<Rational>{q(0), q(1), q(0), q(0)}));
  EXPECT_EQ(row_of(e1, 1), (std::vector<Rational>{q(1, 2), q(-2, 5), q(9, 10), q(0)}));
  EXPECT_EQ(row_of(e2, 1), (std::vector<Rational>{q(0), q(3, 5), q(-16, 35), q(6, 7)}));
  EXPECT_EQ(row_of(e1, 0), (std::vector<Rational>{q(0), q(1), q(0), q(0)}));
  EXPECT_EQ(row_of(e2, 0), (std::vector<Rational>{q(0), q(0), q(1), q(0)}));
}

TEST(ProductOperator, MonomialToeplitzBand) {
  const auto b = builtin_basis<Rational>("monomial");
  const Rational a = q(3, 7);
  const Rational c = q(-5, 2);
  const auto op = build_product_operator(DgPolynomial<Rational>(b, {a, c}), 2);
  Matrix<Rational> want(3, 4);
  for (std::size_t i = 0; i < 3; ++i) {
    want(i, i) = a;
    want(i, i + 1) = c;
  }
  EXPECT_EQ(op.matrix, want);
}

TEST(ProductOperator, ConstantOneIsIdentity) {
  for (const auto& name : registered_names()) {
    const auto b = test_basis<double>(name);
    EXPECT_EQ(build_product_operator(DgPolynomial<double>(b, {1.0}), 3).matrix, Matrix<double>::identity(4)) << name;
  }
}

TEST(ProductOperator, MatchesSumOfPaddedH) {
  const auto b = builtin_basis<Rational>("legendre");
  SeededRng rng(3);
  const auto psi = rng.coefficients<Rational>(4);
  const std::size_t n = 5;
  const auto op = build_product_operator(DgPolynomial<Rational>(b, psi), n);
  Matrix<Rational> sum(n + 1, n + 4);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const auto ht = pad_to_Htilde(build_H(b, n, k), 3);
    for (std::size_t i = 0; i < sum.rows(); ++i)
      for (std::size_t j = 0; j < sum.cols(); ++j) sum(i, j) += psi[k] * ht(i, j);
  }
  EXPECT_EQ(op.matrix, sum);
}

TEST(Multiply, Chelyshkov2Symbolic) {
  // With xi = e_a and psi = e_b the product is row a of H~_{1,b}.
  const auto b = builtin_basis<Rational>("chelyshkov2");
  const auto xi1 = DgPolynomial<Rational>(b, {q(0), q(1)});
  EXPECT_EQ(multiply(xi1, DgPolynomial<Rational>(b, {q(1), q(0), q(0)})).coeffs(),
            (std::vector<Rational>{q(0), q(1), q(0), q(0)}));
  EXPECT_EQ(multiply(xi1, DgPolynomial<Rational>(b, {q(0), q(1), q(0)})).coeffs(),
            (std::vector<Rational>{q(1, 2), q(-2, 5), q(9, 10), q(0)}));
  EXPECT_EQ(multiply(xi1, DgPolynomial<Rational>(b, {q(0), q(0), q(1)})).coeffs(),
            (std::vector<Rational>{q(0), q(3, 5), q(-16, 35), q(6, 7)}));
  // General xi, psi against the expanded closed form.
  const Rational x0 = q(2, 3), x1 = q(-5, 4);
  const Rational p0 = q(1, 7), p1 = q(3), p2 = q(-2, 9);
  const auto got = multiply(DgPolynomial<Rational>(b, {x0, x1}), DgPolynomial<Rational>(b, {p0, p1, p2})).coeffs();
  const std::vector<Rational> want{x0 * p0 + q(1, 2) * x1 * p1, x0 * p1 + x1 * (p0 - q(2, 5) * p1 + q(3, 5) * p2),
                                   x0 * p2 + x1 * (q(9, 10) * p1 - q(16, 35) * p2), q(6, 7) * x1 * p2};
  EXPECT_EQ(got, want);
}

TEST(Multiply, MonomialBinomial) {
  const auto b = builtin_basis<double>("monomial");
  EXPECT_EQ(multiply(DgPolynomial<double>(b, {1, 1}), DgPolynomial<double>(b, {1, 1})).coeffs(),
            (std::vector<double>{1, 2, 1}));
}

TEST(Multiply, HermiteMatchesOracle) {
  const auto b = builtin_basis<double>("hermite-orthonormal");
  SeededRng rng(21);
  const DgPolynomial<double> xi(b, rng.coefficients<double>(5));
  const DgPolynomial<double> psi(b, rng.coefficients<double>(4));
  const auto got = multiply(xi, psi);
  const auto ref = oracle::mul_via_monomial(xi, psi);
  EXPECT_LE(relative_linf(std::span<const double>(got.coeffs()), std::span<const double>(ref.coeffs())), 1e-12);
}

TEST(Multiply, BasisMismatchThrows) {
  const DgPolynomial<double> a(builtin_basis<double>("legendre"), {1, 2});
  const DgPolynomial<double> b(builtin_basis<double>("chebyshev-t"), {1, 2});
  EXPECT_THROW(multiply(a, b), std::invalid_argument);
  const DgPolynomial<double> n1(builtin_basis<double>("newton", std::vector<double>{0, 1, 2}), {1, 2});
  const DgPolynomial<double> n2(builtin_basis<double>("newton", std::vector<double>{0, 3, 2}), {1, 2});
  EXPECT_THROW(multiply(n1, n2), std::invalid_argument);
}

TEST(Multiply, ConstantFactorsShortCircuit) {
  const auto b = builtin_basis<Rational>("chebyshev-t");
  const DgPolynomial<Rational> xi(b, {q(1), q(2), q(3)});
  const DgPolynomial<Rational> c(b, {q(1, 2)});
  EXPECT_EQ(multiply(xi, c).coeffs(), (std::vector<Rational>{q(1, 2), q(1), q(3, 2)}));
  EXPECT_EQ(multiply(c, xi).coeffs(), multiply(xi, c).coeffs());
}

TEST(Multiply, CommutativeAndBilinearExact) {
  SeededRng rng(8);
  for (const auto& name : registered_names()) {
    if (!polymul::testing::allows_exact(name)) continue;
    const auto b = test_basis<Rational>(name);
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = rng.index(6) + 1;
      const DgPolynomial<Rational> x1(b, rng.coefficients<Rational>(n));
      const DgPolynomial<Rational> x2(b, rng.coefficients<Rational>(n));
      const DgPolynomial<Rational> psi(b, rng.coefficients<Rational>(rng.index(6) + 1));
      EXPECT_EQ(multiply(x1, psi).coeffs(), multiply(psi, x1).coeffs()) << name;
      const Rational a = rng.coefficient<Rational>();
      const Rational c = rng.coefficient<Rational>();
      std::vector<Rational> comb(n);
      for (std::size_t i = 0; i < n; ++i) comb[i] = a * x1.coeffs()[i] + c * x2.coeffs()[i];
      const auto lhs = multiply(DgPolynomial<Rational>(b, comb), psi).coeffs();
      const auto r1 = multiply(x1, psi).coeffs();
      const auto r2 = multiply(x2, psi).coeffs();
      for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_EQ(lhs[i], a * r1[i] + c * r2[i]) << name;
    }
  }
}

TEST(Multiply, EvaluationHomomorphism) {
  SeededRng rng(9);
  for (const auto& name : registered_names()) {
    const auto b = test_basis<double>(name);
    for (int t = 0; t < 20; ++t) {
      const DgPolynomial<double> xi(b, rng.coefficients<double>(rng.index(8) + 1));
      const DgPolynomial<double> psi(b, rng.coefficients<double>(rng.index(8) + 1));
      std::vector<double> pts(20);
      for (auto& x : pts) x = rng.symmetric();
      const auto r = oracle::pointwise_check(multiply(xi, psi), std::vector{xi, psi}, pts, 1e-10);
      EXPECT_TRUE(r.pass) << name << " dev=" << r.max_rel_dev;
    }
  }
}

TEST(Power, MonomialCube) {
  const auto b = builtin_basis<Rational>("monomial");
  EXPECT_EQ(power(DgPolynomial<Rational>(b, {q(0), q(1)}), 3).coeffs(), (std::vector<Rational>{q(0), q(0), q(0), q(1)}));
}

TEST(Power, ChebyshevSquare) {
  const auto b = builtin_basis<Rational>("chebyshev-t");
  EXPECT_EQ(power(DgPolynomial<Rational>(b, {q(0), q(1)}), 2).coeffs(), (std::vector<Rational>{q(1, 2), q(0), q(1, 2)}));
}

TEST(Power, LegendreOrthonormalCubeByEvaluation) {
  const auto b = builtin_basis<double>("legendre-orthonormal");
  SeededRng rng(10);
  const DgPolynomial<double> xi(b, rng.coefficients<double>(3));
  const auto r = oracle::pointwise_check(power(xi, 3), std::vector{xi, xi, xi}, oracle::chebyshev_points(30, -1, 1), 1e-9);
  EXPECT_TRUE(r.pass) << r.max_rel_dev;
}

TEST(Power, OneReturnsInputAndBadExponentThrows) {
  const auto b = builtin_basis<double>("legendre");
  const DgPolynomial<double> xi(b, {1, 2, 3});
  EXPECT_EQ(power(xi, 1).coeffs(), xi.coeffs());
  EXPECT_THROW(power(xi, 0), std::invalid_argument);
  EXPECT_THROW(power(xi, -2), std::invalid_argument);
}

TEST(Power, EqualsLeftFoldAndOtherAssociations) {
  SeededRng rng(12);
  for (const auto& name : registered_names()) {
    if (!polymul::testing::allows_exact(name)) continue;
    const auto b = test_basis<Rational>(name);
    const DgPolynomial<Rational> xi(b, rng.coefficients<Rational>(3));
    const auto p4 = power(xi, 4);
    const auto fold = multiply(multiply(multiply(xi, xi), xi), xi);
    EXPECT_EQ(p4.coeffs(), fold.coeffs()) << name;
    const auto sq = multiply(xi, xi);
    EXPECT_EQ(p4.coeffs(), multiply(sq, sq).coeffs()) << name;
  }
  const auto h = builtin_basis<double>("hermite-orthonormal");
  const DgPolynomial<double> xi(h, rng.coefficients<double>(4));
  const auto sq = multiply(xi, xi);
  EXPECT_LE(relative_linf(std::span<const double>(power(xi, 4).coeffs()), std::span<const double>(multiply(sq, sq).coeffs())),
            1e-12);
}

TEST(Eval, Basics) {
  const auto m = builtin_basis<double>("monomial");
  EXPECT_EQ(eval(DgPolynomial<double>(m, {1, 2, 3}), 2.0), 17.0);
  for (const auto& name : registered_names()) {
    const auto b = test_basis<double>(name);
    EXPECT_EQ(eval(DgPolynomial<double>(b, {1.0}), 0.3), 1.0) << name;
  }
}

TEST(Eval, HermiteMatchesMonomialConversion) {
  const auto b = builtin_basis<double>("hermite-orthonormal");
  SeededRng rng(13);
  const DgPolynomial<double> xi(b, rng.coefficients<double>(6));
  const auto mono = oracle::to_monomial(xi);
  double want = 0.0;
  for (std::size_t i = mono.coeffs.size(); i-- > 0;) want = want * 0.7 + mono.coeffs[i];
  EXPECT_NEAR(eval(xi, 0.7), want, 1e-13 * std::max(1.0, std::abs(want)));
}
