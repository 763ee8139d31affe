#pragma once

// Gauss rules by Golub-Welsch: nodes are the eigenvalues of the symmetric
// tridiagonal Jacobi matrix, weights are mu0 times the squared first
// components of the normalized eigenvectors.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polymul {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag, double mu0) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  if (n == 0) throw std::invalid_argument("golub_welsch: empty Jacobi matrix");
  if (offdiag.size() + 1 != diag.size()) throw std::invalid_argument("golub_welsch: off-diagonal length must be n-1");
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
  Eigen::VectorXd e(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i + 1 < n; ++i) e(i) = offdiag[static_cast<std::size_t>(i)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver did not converge");
  GaussRule rule;
  for (Eigen::Index i = 0; i < n; ++i) {
    rule.nodes.push_back(solver.eigenvalues()(i));
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights.push_back(mu0 * v0 * v0);
  }
  return rule;
}

namespace detail {

// Symmetric weights give nodes symmetric about 0; check to 1e-13 and snap.
inline void symmetrize(GaussRule& rule) {
  const std::size_t n = rule.nodes.size();
  double scale = 1.0;
  for (double x : rule.nodes) scale = std::max(scale, std::abs(x));
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double a = rule.nodes[i];
    const double b = rule.nodes[n - 1 - i];
    if (std::abs(a + b) > 1e-13 * scale) throw std::runtime_error("gauss rule: nodes are not symmetric about 0");
    const double x = 0.5 * (b - a);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
}

}  // namespace detail

/// n-point rule for the standard normal density (probabilists' Hermite).
inline GaussRule gauss_hermite_normal(std::size_t n) {
  std::vector<double> diag(n, 0.0);
  std::vector<double> off;
  for (std::size_t j = 1; j < n; ++j) off.push_back(std::sqrt(static_cast<double>(j)));
  auto rule = golub_welsch(diag, off, 1.0);
  detail::symmetrize(rule);
  return rule;
}

/// n-point rule for the uniform probability density 1/2 on [-1, 1].
inline GaussRule gauss_legendre_uniform(std::size_t n) {
  std::vector<double> diag(n, 0.0);
  std::vector<double> off;
  for (std::size_t j = 1; j < n; ++j) {
    const double d = static_cast<double>(j);
    off.push_back(d / std::sqrt(4.0 * d * d - 1.0));
  }
  auto rule = golub_welsch(diag, off, 1.0);
  detail::symmetrize(rule);
  return rule;
}

/// n-point Gauss-Legendre rule for plain dx on [a, b].
inline GaussRule gauss_legendre(std::size_t n, double a, double b) {
  auto rule = gauss_legendre_uniform(n);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[i];
    rule.weights[i] *= (b - a);
  }
  return rule;
}

}  // namespace polymul
