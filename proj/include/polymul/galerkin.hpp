#pragma once

// Stochastic Galerkin matrices U_{k,p}[i][j] = <psi_k psi_i psi_j> for an
// orthonormal family. For k >= 1, U_{k,p} is the leading (p+1) x (p+1) block
// of H_{p,k}; U_{0,p} is the identity. Multivariate blocks are
// G_alpha = U_{alpha_M,p_M} (x) ... (x) U_{alpha_1,p_1}.

#include "polymul/bases.hpp"
#include "polymul/matrix.hpp"
#include "polymul/opmatrix_cache.hpp"
#include "polymul/quadrature.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace polymul {

template <Scalar S>
struct GalerkinBlock {
  BasisPtr<S> basis;
  std::size_t k = 0;
  std::size_t p = 0;
  Matrix<S> matrix;  // (p+1) x (p+1), symmetric
};

template <Scalar S>
GalerkinBlock<S> univariate_U(const BasisPtr<S>& basis, std::size_t k, std::size_t p,
                              OpMatrixCache<S>& cache = default_cache<S>()) {
  if (!basis) throw std::invalid_argument("univariate_U: null basis");
  if (!basis->orthonormal())
    throw std::invalid_argument("univariate_U: basis '" + basis->name() + "' is not flagged orthonormal");
  if (k == 0) return GalerkinBlock<S>{basis, 0, p, Matrix<S>::identity(p + 1)};
  const auto h = cache.get(basis, p, k);
  return GalerkinBlock<S>{basis, k, p, submatrix(h->entries, 0, 0, p + 1, p + 1)};
}

/// `bases` holds one basis per dimension, or a single basis used for all.
template <Scalar S>
Matrix<S> assemble_G(std::span<const std::size_t> alpha, std::span<const std::size_t> orders,
                     std::span<const BasisPtr<S>> bases, OpMatrixCache<S>& cache = default_cache<S>()) {
  if (alpha.empty()) throw std::invalid_argument("assemble_G: empty multi-index");
  if (alpha.size() != orders.size())
    throw std::invalid_argument("assemble_G: multi-index has " + std::to_string(alpha.size()) + " entries but " +
                                std::to_string(orders.size()) + " orders were given");
  if (bases.size() != 1 && bases.size() != alpha.size())
    throw std::invalid_argument("assemble_G: need one basis or one per dimension");
  auto basis_at = [&](std::size_t d) { return bases.size() == 1 ? bases[0] : bases[d]; };
  // Dimension 1 is innermost, dimension M outermost.
  Matrix<S> g = univariate_U(basis_at(0), alpha[0], orders[0], cache).matrix;
  for (std::size_t d = 1; d < alpha.size(); ++d) g = kron(univariate_U(basis_at(d), alpha[d], orders[d], cache).matrix, g);
  return g;
}

namespace detail {

// Orthonormal values from the classical unnormalized recurrences, kept
// separate from the basis' own recurrence coefficients.
inline std::vector<double> hermite_orthonormal_values(std::size_t n, double x) {
  std::vector<double> he(n + 1, 0.0);
  he[0] = 1.0;
  if (n >= 1) he[1] = x;
  for (std::size_t j = 1; j < n; ++j) he[j + 1] = x * he[j] - static_cast<double>(j) * he[j - 1];
  double fact = 1.0;
  for (std::size_t j = 0; j <= n; ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    he[j] /= std::sqrt(fact);
  }
  return he;
}

inline std::vector<double> legendre_orthonormal_values(std::size_t n, double x) {
  std::vector<double> p(n + 1, 0.0);
  p[0] = 1.0;
  if (n >= 1) p[1] = x;
  for (std::size_t j = 1; j < n; ++j) {
    const double d = static_cast<double>(j);
    p[j + 1] = ((2.0 * d + 1.0) * x * p[j] - d * p[j - 1]) / (d + 1.0);
  }
  for (std::size_t j = 0; j <= n; ++j) p[j] *= std::sqrt(2.0 * static_cast<double>(j) + 1.0);
  return p;
}

}  // namespace detail

/// <psi_k psi_i psi_j> by a Gauss rule exact for degree k+i+j.
template <Scalar S>
double triple_product_quadrature(const RecurrenceBasis<S>& basis, std::size_t k, std::size_t i, std::size_t j) {
  const std::size_t top = std::max({k, i, j});
  const std::size_t npts = (k + i + j) / 2 + 1;
  GaussRule rule;
  std::vector<double> (*values)(std::size_t, double) = nullptr;
  switch (basis.weight()) {
    case Weight::gaussian:
      rule = gauss_hermite_normal(npts);
      values = &detail::hermite_orthonormal_values;
      break;
    case Weight::uniform:
      rule = gauss_legendre_uniform(npts);
      values = &detail::legendre_orthonormal_values;
      break;
    case Weight::none:
      throw std::invalid_argument("triple_product_quadrature: basis '" + basis.name() + "' has no supported weight");
  }
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const auto v = values(top, rule.nodes[q]);
    sum += rule.weights[q] * v[k] * v[i] * v[j];
  }
  return sum;
}

}  // namespace polymul
