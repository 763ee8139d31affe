#pragma once

// Degree-graded polynomial bases given by a three-term recurrence
//
//   x phi_j(x) = alpha_j phi_{j+1}(x) + beta_j phi_j(x) + gamma_j phi_{j-1}(x),
//   phi_{-1} = 0, phi_0 = 1, alpha_j != 0.
//
// A basis is immutable once built; coefficient sequences are memoized lazily
// behind a mutex so instances can be shared across threads.

#include "polymul/matrix.hpp"
#include "polymul/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polymul {

enum class BasisFamily {
  monomial,
  newton,
  chebyshev_t,
  legendre,
  legendre_orthonormal,
  hermite_orthonormal,
  chelyshkov2,
  custom,
};

/// Probability weight a family is orthonormal against (used by the quadrature oracle).
enum class Weight { none, gaussian, uniform };

template <Scalar S>
struct RecurrenceCoefficients {
  std::vector<S> alpha;
  std::vector<S> beta;
  std::vector<S> gamma;
};

template <Scalar S>
class RecurrenceBasis {
 public:
  using CoefficientFn = std::function<S(std::size_t)>;

  struct Definition {
    std::string name;
    BasisFamily family = BasisFamily::custom;
    CoefficientFn alpha;
    CoefficientFn beta;
    CoefficientFn gamma;
    ScalarMode mode = ScalarTraits<S>::mode;
    std::optional<std::vector<S>> nodes;
    bool orthonormal = false;
    Weight weight = Weight::none;
  };

  explicit RecurrenceBasis(Definition def) : def_(std::move(def)) {
    if (def_.name.empty()) throw std::invalid_argument("basis name must not be empty");
    if (!def_.alpha || !def_.beta || !def_.gamma)
      throw std::invalid_argument("basis '" + def_.name + "': missing coefficient function");
    key_ = def_.name;
    if (def_.nodes) {
      key_ += "[";
      for (std::size_t i = 0; i < def_.nodes->size(); ++i) {
        if (i) key_ += ",";
        key_ += ScalarTraits<S>::format((*def_.nodes)[i]);
      }
      key_ += "]";
    }
  }

  const std::string& name() const { return def_.name; }
  /// Identity used for equality and cache lookup; includes Newton nodes.
  const std::string& key() const { return key_; }
  BasisFamily family() const { return def_.family; }
  ScalarMode mode() const { return def_.mode; }
  bool orthonormal() const { return def_.orthonormal; }
  Weight weight() const { return def_.weight; }
  const std::optional<std::vector<S>>& nodes() const { return def_.nodes; }

  S alpha(std::size_t j) const { return lookup(alpha_memo_, def_.alpha, j, true); }
  S beta(std::size_t j) const { return lookup(beta_memo_, def_.beta, j, false); }
  S gamma(std::size_t j) const { return lookup(gamma_memo_, def_.gamma, j, false); }

  /// alpha, beta, gamma for indices 0 .. count-1.
  RecurrenceCoefficients<S> coefficients(std::size_t count) const {
    RecurrenceCoefficients<S> out;
    if (count == 0) return out;
    alpha(count - 1);
    beta(count - 1);
    gamma(count - 1);
    std::lock_guard lock(mutex_);
    out.alpha.assign(alpha_memo_.begin(), alpha_memo_.begin() + static_cast<std::ptrdiff_t>(count));
    out.beta.assign(beta_memo_.begin(), beta_memo_.begin() + static_cast<std::ptrdiff_t>(count));
    out.gamma.assign(gamma_memo_.begin(), gamma_memo_.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
  }

 private:
  S lookup(std::vector<S>& memo, const CoefficientFn& fn, std::size_t j, bool nonzero) const {
    std::lock_guard lock(mutex_);
    while (memo.size() <= j) {
      S value = fn(memo.size());
      if (nonzero && value == S{0})
        throw std::domain_error("basis '" + def_.name + "': alpha(" + std::to_string(memo.size()) + ") = 0");
      memo.push_back(std::move(value));
    }
    return memo[j];
  }

  Definition def_;
  std::string key_;
  mutable std::mutex mutex_;
  mutable std::vector<S> alpha_memo_;
  mutable std::vector<S> beta_memo_;
  mutable std::vector<S> gamma_memo_;
};

template <Scalar S>
using BasisPtr = std::shared_ptr<const RecurrenceBasis<S>>;

template <Scalar S>
bool same_basis(const BasisPtr<S>& a, const BasisPtr<S>& b) {
  return a == b || (a && b && a->key() == b->key());
}

struct BasisInfo {
  std::string_view name;
  BasisFamily family;
  ScalarMode mode;
  bool orthonormal;
  std::string_view description;
};

inline constexpr BasisInfo kRegisteredBases[] = {
    {"monomial", BasisFamily::monomial, ScalarMode::exact_rational, false, "1, x, x^2, ..."},
    {"newton", BasisFamily::newton, ScalarMode::exact_rational, false, "prod_{i<j} (x - tau_i); requires nodes"},
    {"chebyshev-t", BasisFamily::chebyshev_t, ScalarMode::exact_rational, false, "Chebyshev polynomials of the first kind"},
    {"legendre", BasisFamily::legendre, ScalarMode::exact_rational, false, "classical Legendre P_j"},
    {"legendre-orthonormal", BasisFamily::legendre_orthonormal, ScalarMode::float64, true,
     "Legendre, orthonormal for the uniform density on [-1,1]"},
    {"hermite-orthonormal", BasisFamily::hermite_orthonormal, ScalarMode::float64, true,
     "probabilists' Hermite, orthonormal for the standard normal density"},
    {"chelyshkov2", BasisFamily::chelyshkov2, ScalarMode::exact_rational, false,
     "Chelyshkov polynomials of the second kind, weight x on [0,1]"},
};

inline const BasisInfo* find_registered(std::string_view name) {
  for (const auto& info : kRegisteredBases)
    if (info.name == name) return &info;
  return nullptr;
}

namespace detail {

template <Scalar S>
void check_distinct_nodes(const std::vector<S>& nodes, std::string_view what) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j])
        throw std::invalid_argument(std::string(what) + ": duplicate node " + ScalarTraits<S>::format(nodes[i]));
}

template <Scalar S>
S checked_sqrt(double v) {
  if constexpr (ScalarTraits<S>::exact) {
    (void)v;
    throw std::logic_error("square root requested in exact mode");
  } else {
    return std::sqrt(v);
  }
}

}  // namespace detail

/// Builds one of the registered bases. `nodes` must be given for, and only
/// for, the Newton basis. Float-only families are rejected when S is exact.
template <Scalar S>
BasisPtr<S> builtin_basis(std::string_view name, std::optional<std::vector<S>> nodes = std::nullopt) {
  const BasisInfo* info = find_registered(name);
  if (!info) throw std::invalid_argument("unknown basis '" + std::string(name) + "'");
  if (info->family == BasisFamily::newton) {
    if (!nodes) throw std::invalid_argument("basis 'newton' requires nodes");
    detail::check_distinct_nodes(*nodes, "basis 'newton'");
  } else if (nodes) {
    throw std::invalid_argument("basis '" + std::string(name) + "' does not take nodes");
  }
  if (ScalarTraits<S>::exact && info->mode == ScalarMode::float64)
    throw std::invalid_argument("basis '" + std::string(name) + "' is float64-only; exact mode is unavailable");

  using Def = typename RecurrenceBasis<S>::Definition;
  Def def;
  def.name = std::string(name);
  def.family = info->family;
  def.mode = ScalarTraits<S>::mode;
  def.orthonormal = info->orthonormal;
  auto zero = [](std::size_t) { return S{0}; };
  auto one = [](std::size_t) { return S{1}; };
  const auto ll = [](std::size_t j) { return static_cast<long long>(j); };

  switch (info->family) {
    case BasisFamily::monomial:
      def.alpha = one;
      def.beta = zero;
      def.gamma = zero;
      break;
    case BasisFamily::newton: {
      auto shared_nodes = std::make_shared<const std::vector<S>>(*nodes);
      def.alpha = one;
      def.beta = [shared_nodes, n = std::string(name)](std::size_t j) -> S {
        if (j >= shared_nodes->size())
          throw std::out_of_range("basis 'newton': node " + std::to_string(j) + " requested but only " +
                                  std::to_string(shared_nodes->size()) + " nodes given");
        return (*shared_nodes)[j];
      };
      def.gamma = zero;
      def.nodes = std::move(nodes);
      break;
    }
    case BasisFamily::chebyshev_t:
      // x T_0 = T_1;  x T_j = (T_{j+1} + T_{j-1}) / 2
      def.alpha = [](std::size_t j) { return j == 0 ? S{1} : ratio<S>(1, 2); };
      def.beta = zero;
      def.gamma = [](std::size_t j) { return j == 0 ? S{0} : ratio<S>(1, 2); };
      break;
    case BasisFamily::legendre:
      // x P_j = (j+1)/(2j+1) P_{j+1} + j/(2j+1) P_{j-1}
      def.alpha = [ll](std::size_t j) { return ratio<S>(ll(j) + 1, 2 * ll(j) + 1); };
      def.beta = zero;
      def.gamma = [ll](std::size_t j) { return ratio<S>(ll(j), 2 * ll(j) + 1); };
      break;
    case BasisFamily::legendre_orthonormal:
      def.weight = Weight::uniform;
      def.alpha = [](std::size_t j) {
        const double d = static_cast<double>(j);
        return S{(d + 1.0) / std::sqrt((2.0 * d + 1.0) * (2.0 * d + 3.0))};
      };
      def.beta = zero;
      def.gamma = [](std::size_t j) {
        if (j == 0) return S{0};
        const double d = static_cast<double>(j);
        return S{d / std::sqrt((2.0 * d - 1.0) * (2.0 * d + 1.0))};
      };
      break;
    case BasisFamily::hermite_orthonormal:
      def.weight = Weight::gaussian;
      def.alpha = [](std::size_t j) { return detail::checked_sqrt<S>(static_cast<double>(j + 1)); };
      def.beta = zero;
      def.gamma = [](std::size_t j) { return detail::checked_sqrt<S>(static_cast<double>(j)); };
      break;
    case BasisFamily::chelyshkov2:
      // alpha_i = (i+2)/(4i+6), beta_i = 2(i+1)^2/((2i+3)(2i+1)), gamma_i = i/(4i+2).
      // gamma carries the sign that makes the family orthogonal for weight x on [0,1].
      def.alpha = [ll](std::size_t i) { return ratio<S>(ll(i) + 2, 4 * ll(i) + 6); };
      def.beta = [ll](std::size_t i) {
        const long long a = ll(i);
        return ratio<S>(2 * (a + 1) * (a + 1), (2 * a + 3) * (2 * a + 1));
      };
      def.gamma = [ll](std::size_t i) { return ratio<S>(ll(i), 4 * ll(i) + 2); };
      break;
    case BasisFamily::custom:
      throw std::logic_error("custom family is not a registered builtin");
  }
  return std::make_shared<const RecurrenceBasis<S>>(std::move(def));
}

/// Basis from explicit coefficient lists; indices past the lists are rejected.
template <Scalar S>
BasisPtr<S> custom_basis(std::string name, std::vector<S> alpha, std::vector<S> beta, std::vector<S> gamma,
                         bool orthonormal = false, Weight weight = Weight::none) {
  if (alpha.size() != beta.size() || alpha.size() != gamma.size())
    throw std::invalid_argument("custom basis '" + name + "': alpha, beta, gamma lengths differ");
  auto make = [name](std::vector<S> values, const char* which) {
    auto shared = std::make_shared<const std::vector<S>>(std::move(values));
    return [shared, name, which](std::size_t j) -> S {
      if (j >= shared->size())
        throw std::out_of_range("custom basis '" + name + "': " + which + "(" + std::to_string(j) +
                                ") beyond the supplied max degree " + std::to_string(shared->size()));
      return (*shared)[j];
    };
  };
  typename RecurrenceBasis<S>::Definition def;
  def.name = std::move(name);
  def.family = BasisFamily::custom;
  def.alpha = make(std::move(alpha), "alpha");
  def.beta = make(std::move(beta), "beta");
  def.gamma = make(std::move(gamma), "gamma");
  def.orthonormal = orthonormal;
  def.weight = weight;
  return std::make_shared<const RecurrenceBasis<S>>(std::move(def));
}

/// [phi_0(x), ..., phi_n(x)] by the forward recurrence
/// phi_{j+1} = ((x - beta_j) phi_j - gamma_j phi_{j-1}) / alpha_j.
template <Scalar S>
std::vector<S> eval_basis_vector(const RecurrenceBasis<S>& basis, std::size_t n, const S& x) {
  std::vector<S> phi(n + 1, S{0});
  phi[0] = S{1};
  if (n == 0) return phi;
  const auto c = basis.coefficients(n);
  for (std::size_t j = 0; j < n; ++j) {
    S next = (x - c.beta[j]) * phi[j];
    if (j > 0) next -= c.gamma[j] * phi[j - 1];
    phi[j + 1] = next / c.alpha[j];
  }
  return phi;
}

/// Lower-triangular matrix whose row j holds the monomial coefficients of phi_j.
template <Scalar S>
Matrix<S> basis_to_monomial_matrix(const RecurrenceBasis<S>& basis, std::size_t n) {
  Matrix<S> m(n + 1, n + 1);
  m(0, 0) = S{1};
  if (n == 0) return m;
  const auto c = basis.coefficients(n);
  for (std::size_t j = 0; j < n; ++j) {
    // alpha_j phi_{j+1} = x phi_j - beta_j phi_j - gamma_j phi_{j-1}
    for (std::size_t p = 0; p <= j + 1; ++p) {
      S v{0};
      if (p > 0) v += m(j, p - 1);
      if (p <= j) v -= c.beta[j] * m(j, p);
      if (j > 0 && p <= j - 1) v -= c.gamma[j] * m(j - 1, p);
      m(j + 1, p) = v / c.alpha[j];
    }
  }
  return m;
}

}  // namespace polymul
