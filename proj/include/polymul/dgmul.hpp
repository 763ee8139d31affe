#pragma once

// Multiplication in a degree-graded basis without leaving it.
//
// For Xi = xi . Phi_n and Psi = psi . Phi_m,
//   Xi * Psi = xi . Hcal_{n,m} . Phi_{n+m},   Hcal_{n,m} = sum_k psi_k H~_{n,k},
// where H~_{n,k} is H_{n,k} padded with m-k zero columns.

#include "polymul/bases.hpp"
#include "polymul/matrix.hpp"
#include "polymul/opmatrix.hpp"
#include "polymul/opmatrix_cache.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace polymul {

/// Coefficient vector over a recurrence basis; coeffs[j] multiplies phi_j.
/// Degree is representational: trailing zeros are kept.
template <Scalar S>
class DgPolynomial {
 public:
  DgPolynomial(BasisPtr<S> basis, std::vector<S> coeffs) : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (!basis_) throw std::invalid_argument("DgPolynomial: null basis");
    if (coeffs_.empty()) throw std::invalid_argument("DgPolynomial: coefficient vector must not be empty");
  }

  const BasisPtr<S>& basis() const { return basis_; }
  const std::vector<S>& coeffs() const { return coeffs_; }
  std::size_t degree() const { return coeffs_.size() - 1; }

 private:
  BasisPtr<S> basis_;
  std::vector<S> coeffs_;
};

template <Scalar S>
struct ProductOperator {
  BasisPtr<S> basis;
  std::size_t n = 0;  // degree of the left factor space
  std::size_t m = 0;  // degree of the polynomial the operator multiplies by
  Matrix<S> matrix;   // (n+1) x (n+m+1)

  std::vector<S> apply(std::span<const S> xi) const { return row_times(xi, matrix); }
};

/// Hcal_{n,m} for the multiplier psi. The monomial basis writes shifted copies
/// of psi directly (banded Toeplitz), no H matrices needed.
template <Scalar S>
ProductOperator<S> build_product_operator(const DgPolynomial<S>& psi, std::size_t n,
                                          OpMatrixCache<S>& cache = default_cache<S>()) {
  const std::size_t m = psi.degree();
  ProductOperator<S> op{psi.basis(), n, m, Matrix<S>(n + 1, n + m + 1)};
  const auto& c = psi.coeffs();
  if (psi.basis()->family() == BasisFamily::monomial) {
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k <= m; ++k) op.matrix(i, i + k) = c[k];
    return op;
  }
  for (std::size_t k = 0; k <= m; ++k) {
    if (c[k] == S{0}) continue;
    const auto h = cache.get(psi.basis(), n, k);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = band_first(k, i); j <= band_last(k, i); ++j) op.matrix(i, j) += c[k] * h->entries(i, j);
    }
  }
  return op;
}

/// xi * psi in the common basis; result degree is deg(xi) + deg(psi).
template <Scalar S>
DgPolynomial<S> multiply(const DgPolynomial<S>& xi, const DgPolynomial<S>& psi,
                         OpMatrixCache<S>& cache = default_cache<S>()) {
  if (!same_basis(xi.basis(), psi.basis()))
    throw std::invalid_argument("multiply: basis mismatch ('" + xi.basis()->key() + "' vs '" + psi.basis()->key() + "')");
  // phi_0 = 1, so a degree-0 factor is just a scalar.
  if (psi.degree() == 0) {
    std::vector<S> out(xi.coeffs());
    for (auto& v : out) v *= psi.coeffs()[0];
    return DgPolynomial<S>(xi.basis(), std::move(out));
  }
  if (xi.degree() == 0) {
    std::vector<S> out(psi.coeffs());
    for (auto& v : out) v *= xi.coeffs()[0];
    return DgPolynomial<S>(xi.basis(), std::move(out));
  }
  const auto op = build_product_operator(psi, xi.degree(), cache);
  return DgPolynomial<S>(xi.basis(), op.apply(std::span<const S>(xi.coeffs())));
}

/// xi^p = xi . Hcal_{n,n} . Hcal_{2n,n} ... Hcal_{(p-1)n,n}, applied left to
/// right; every stage multiplies by xi itself.
template <Scalar S>
DgPolynomial<S> power(const DgPolynomial<S>& xi, int p, OpMatrixCache<S>& cache = default_cache<S>()) {
  if (p < 1) throw std::invalid_argument("power: exponent must be >= 1, got " + std::to_string(p));
  DgPolynomial<S> acc = xi;
  for (int j = 1; j < p; ++j) acc = multiply(acc, xi, cache);
  return acc;
}

template <Scalar S>
S eval(const DgPolynomial<S>& xi, const S& x) {
  const auto phi = eval_basis_vector(*xi.basis(), xi.degree(), x);
  S acc{0};
  for (std::size_t j = 0; j < phi.size(); ++j) acc += xi.coeffs()[j] * phi[j];
  return acc;
}

}  // namespace polymul
