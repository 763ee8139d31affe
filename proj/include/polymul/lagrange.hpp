#pragma once

// Lagrange polynomials on distinct nodes tau_0..tau_n with values p_j:
//   L_{j,n}(x) = l_n(x) w_{n,j} / (x - tau_j),  w_{n,j} = prod_{m != j} 1/(tau_j - tau_m).
// Lifting to extra nodes uses R_{n,m} = [I_{n+1} | K]; multiplication lifts
// both factors onto a common node set and multiplies values pointwise.
// Added nodes always go last.

#include "polymul/matrix.hpp"
#include "polymul/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polymul::lagrange {

namespace detail {

template <Scalar S>
void require_distinct(std::span<const S> nodes, const char* what) {
  if (nodes.size() < 2) return;
  if constexpr (ScalarTraits<S>::exact) {
    std::vector<S> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i] == sorted[i - 1])
        throw std::invalid_argument(std::string(what) + ": duplicate node " + ScalarTraits<S>::format(sorted[i]));
  } else {
    std::vector<double> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    const double span = sorted.back() - sorted.front();
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (!(sorted[i] - sorted[i - 1] > 1e-13 * span))
        throw std::invalid_argument(std::string(what) + ": duplicate or nearly coincident node " +
                                    format_double(sorted[i]));
  }
}

/// L_j(x) over `nodes` by the product form; exactly delta_{ij} when x is node i.
template <Scalar S>
S lagrange_basis_value(std::span<const S> nodes, std::size_t j, const S& x) {
  S v{1};
  for (std::size_t r = 0; r < nodes.size(); ++r) {
    if (r == j) continue;
    if (x == nodes[r]) return S{0};
    v *= (x - nodes[r]) / (nodes[j] - nodes[r]);
  }
  return v;
}

}  // namespace detail

template <Scalar S>
class LagrangePolynomial {
 public:
  LagrangePolynomial(std::vector<S> nodes, std::vector<S> values) : nodes_(std::move(nodes)), values_(std::move(values)) {
    if (nodes_.empty()) throw std::invalid_argument("LagrangePolynomial: needs at least one node");
    if (nodes_.size() != values_.size())
      throw std::invalid_argument("LagrangePolynomial: " + std::to_string(nodes_.size()) + " nodes but " +
                                  std::to_string(values_.size()) + " values");
    detail::require_distinct<S>(nodes_, "LagrangePolynomial");
  }

  const std::vector<S>& nodes() const { return nodes_; }
  const std::vector<S>& values() const { return values_; }
  std::size_t degree() const { return nodes_.size() - 1; }

 private:
  std::vector<S> nodes_;
  std::vector<S> values_;
};

template <Scalar S>
std::vector<S> barycentric_weights(std::span<const S> nodes) {
  detail::require_distinct<S>(nodes, "barycentric_weights");
  std::vector<S> w(nodes.size(), S{1});
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    S d{1};
    for (std::size_t m = 0; m < nodes.size(); ++m)
      if (m != j) d *= nodes[j] - nodes[m];
    w[j] = S{1} / d;
  }
  return w;
}

/// Weights of every prefix tau_0..tau_q for q = first..last, grown one node
/// at a time: w_{q,s} = w_{q-1,s} / (tau_s - tau_q), w_{q,q} = prod_{r<q} 1/(tau_q - tau_r).
template <Scalar S>
std::vector<std::vector<S>> prefix_weights(std::span<const S> nodes, std::size_t first) {
  if (first >= nodes.size()) throw std::out_of_range("prefix_weights: first prefix beyond node count");
  std::vector<std::vector<S>> table;
  table.push_back(barycentric_weights<S>(nodes.first(first + 1)));
  for (std::size_t q = first + 1; q < nodes.size(); ++q) {
    const auto& prev = table.back();
    std::vector<S> w(q + 1);
    S d{1};
    for (std::size_t s = 0; s < q; ++s) {
      w[s] = prev[s] / (nodes[s] - nodes[q]);
      d *= nodes[q] - nodes[s];
    }
    w[q] = S{1} / d;
    table.push_back(std::move(w));
  }
  return table;
}

/// Second-form barycentric evaluation; returns the stored value on a node.
template <Scalar S>
S eval(const LagrangePolynomial<S>& p, const S& x) {
  const auto& t = p.nodes();
  for (std::size_t j = 0; j < t.size(); ++j)
    if (x == t[j]) return p.values()[j];
  const auto w = barycentric_weights<S>(t);
  S num{0};
  S den{0};
  for (std::size_t j = 0; j < t.size(); ++j) {
    const S c = w[j] / (x - t[j]);
    num += c * p.values()[j];
    den += c;
  }
  return num / den;
}

template <Scalar S>
struct LagrangeLift {
  std::vector<S> base_nodes;   // tau_0..tau_n
  std::vector<S> extra_nodes;  // tau_{n+1}..tau_m
  Matrix<S> matrix;            // (n+1) x (m+1) = [I | K]
};

/// R_{n,m} with K from the recurrence (1-based i, j)
///   K[i,j] = -w_{j+n,i-1} / w_{j+n,j+n} - (1/w_{j+n,j+n}) sum_{r=1}^{j-1} w_{j+n,j+n-r} K[i,j-r].
template <Scalar S>
LagrangeLift<S> lift_matrix(std::span<const S> base_nodes, std::span<const S> extra_nodes) {
  if (base_nodes.empty()) throw std::invalid_argument("lagrange lift_matrix: no base nodes");
  if (extra_nodes.empty()) throw std::invalid_argument("lagrange lift_matrix: no extra nodes to lift onto");
  std::vector<S> all(base_nodes.begin(), base_nodes.end());
  all.insert(all.end(), extra_nodes.begin(), extra_nodes.end());
  detail::require_distinct<S>(all, "lagrange lift_matrix");

  const std::size_t n = base_nodes.size() - 1;
  const std::size_t extra = extra_nodes.size();
  const auto w = prefix_weights<S>(all, n + 1);  // w[j-1] holds w_{n+j, .}

  LagrangeLift<S> out{std::vector<S>(base_nodes.begin(), base_nodes.end()),
                      std::vector<S>(extra_nodes.begin(), extra_nodes.end()), Matrix<S>(n + 1, n + extra + 1)};
  for (std::size_t i = 0; i <= n; ++i) out.matrix(i, i) = S{1};
  for (std::size_t j = 1; j <= extra; ++j) {
    const auto& wq = w[j - 1];
    const std::size_t q = n + j;
    for (std::size_t i = 0; i <= n; ++i) {
      S v = -wq[i];
      for (std::size_t r = 1; r < j; ++r) v -= wq[q - r] * out.matrix(i, n + j - r);
      out.matrix(i, n + j) = v / wq[q];
    }
  }
  return out;
}

/// Same polynomial on base ++ extra nodes: q = p . R_{n,m}.
template <Scalar S>
LagrangePolynomial<S> lift(const LagrangePolynomial<S>& p, std::type_identity_t<std::span<const S>> extra_nodes) {
  const auto r = lift_matrix<S>(p.nodes(), extra_nodes);
  std::vector<S> nodes = p.nodes();
  nodes.insert(nodes.end(), extra_nodes.begin(), extra_nodes.end());
  return LagrangePolynomial<S>(std::move(nodes), row_times(std::span<const S>(p.values()), r.matrix));
}

/// Values of L_{k,m}(x) L_{j,n}(x) at the m+n+1 nodes, where L_{k,m} lives on
/// nodes[0..m] and L_{j,n} on nodes[0..n]. Shared nodes give
/// delta_{ik} delta_{ij}; a node owned by only the larger factor gives that
/// factor's delta times the smaller factor's value; appended nodes give the
/// plain product.
template <Scalar S>
std::vector<S> element_product_row(std::size_t j, std::size_t k, std::size_t m, std::size_t n,
                                   std::span<const S> nodes) {
  if (nodes.size() != m + n + 1) throw std::invalid_argument("lagrange element_product_row: need m+n+1 nodes");
  if (j > n || k > m) throw std::out_of_range("lagrange element_product_row: index out of range");
  detail::require_distinct<S>(nodes, "lagrange element_product_row");
  const auto left = nodes.first(m + 1);
  const auto right = nodes.first(n + 1);
  std::vector<S> row(m + n + 1, S{0});
  for (std::size_t i = 0; i < row.size(); ++i) {
    const S a = i <= m ? S(i == k ? 1 : 0) : detail::lagrange_basis_value(left, k, nodes[i]);
    if (a == S{0}) continue;
    const S b = i <= n ? S(i == j ? 1 : 0) : detail::lagrange_basis_value(right, j, nodes[i]);
    row[i] = a * b;
  }
  return row;
}

/// H~_{n,k}: rows j = 0..n of element_product_row.
template <Scalar S>
Matrix<S> element_product_matrix(std::size_t k, std::size_t m, std::size_t n, std::span<const S> nodes) {
  Matrix<S> h(n + 1, m + n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const auto row = element_product_row<S>(j, k, m, n, nodes);
    std::copy(row.begin(), row.end(), h.row(j).begin());
  }
  return h;
}

/// `count` new nodes for a node set: Chebyshev points of the second kind on
/// [min, max] picked greedily, farthest from every node chosen so far first;
/// candidates within 1e-12 * span of a node are skipped.
template <Scalar S>
std::vector<S> augment_nodes(std::span<const S> existing, std::size_t count) {
  if (count == 0) return {};
  if (existing.empty()) throw std::invalid_argument("augment_nodes: no existing nodes");
  double lo = to_double(existing[0]);
  double hi = lo;
  for (const auto& t : existing) {
    lo = std::min(lo, to_double(t));
    hi = std::max(hi, to_double(t));
  }
  if (hi == lo) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double span = hi - lo;
  std::vector<double> taken;
  for (const auto& t : existing) taken.push_back(to_double(t));
  std::vector<S> chosen;
  std::size_t npts = std::max<std::size_t>(8, 2 * (existing.size() + count));
  while (chosen.size() < count) {
    std::vector<double> cand(npts + 1);
    for (std::size_t i = 0; i <= npts; ++i)
      cand[i] = 0.5 * (lo + hi) + 0.5 * span * std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(npts));
    while (chosen.size() < count) {
      double best_gap = -1.0;
      std::size_t best = 0;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        double gap = std::numeric_limits<double>::infinity();
        for (double t : taken) gap = std::min(gap, std::abs(cand[i] - t));
        if (gap > best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      if (!(best_gap > 1e-12 * span)) break;
      taken.push_back(cand[best]);
      chosen.push_back(ScalarTraits<S>::from_double(cand[best]));
    }
    npts *= 2;
  }
  return chosen;
}

namespace detail {

// Reorders `big` so that the nodes of `small` come first, in small's order.
template <Scalar S>
LagrangePolynomial<S> nest_nodes(const LagrangePolynomial<S>& big, const LagrangePolynomial<S>& small) {
  std::vector<bool> used(big.nodes().size(), false);
  std::vector<S> nodes;
  std::vector<S> values;
  for (const auto& t : small.nodes()) {
    auto it = std::find(big.nodes().begin(), big.nodes().end(), t);
    if (it == big.nodes().end())
      throw std::invalid_argument("lagrange multiply: node " + ScalarTraits<S>::format(t) +
                                  " of the lower-degree factor is not a node of the other factor");
    const auto idx = static_cast<std::size_t>(it - big.nodes().begin());
    used[idx] = true;
    nodes.push_back(big.nodes()[idx]);
    values.push_back(big.values()[idx]);
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) continue;
    nodes.push_back(big.nodes()[i]);
    values.push_back(big.values()[i]);
  }
  return LagrangePolynomial<S>(std::move(nodes), std::move(values));
}

template <Scalar S>
LagrangePolynomial<S> lift_or_keep(const LagrangePolynomial<S>& p, std::span<const S> extra) {
  return extra.empty() ? p : lift(p, extra);
}

}  // namespace detail

/// P * Q on the nodes of the higher-degree factor plus min(deg P, deg Q)
/// extra nodes (generated by augment_nodes when not given). The lower-degree
/// factor's nodes must be a subset of the other factor's nodes; they are
/// moved to the front of the result's node list.
template <Scalar S>
LagrangePolynomial<S> multiply(const LagrangePolynomial<S>& p, const LagrangePolynomial<S>& q,
                               std::optional<std::type_identity_t<std::vector<S>>> extra_nodes = std::nullopt) {
  const bool p_big = p.degree() >= q.degree();
  const auto& big_in = p_big ? p : q;
  const auto& small = p_big ? q : p;
  const auto big = detail::nest_nodes(big_in, small);
  const std::size_t need = small.degree();
  std::vector<S> extra = extra_nodes ? std::move(*extra_nodes) : augment_nodes<S>(big.nodes(), need);
  if (extra.size() != need)
    throw std::invalid_argument("lagrange multiply: need " + std::to_string(need) + " extra nodes, got " +
                                std::to_string(extra.size()));
  const auto s = detail::lift_or_keep(big, std::span<const S>(extra));
  std::vector<S> small_extra(big.nodes().begin() + static_cast<std::ptrdiff_t>(small.nodes().size()), big.nodes().end());
  small_extra.insert(small_extra.end(), extra.begin(), extra.end());
  const auto t = detail::lift_or_keep(small, std::span<const S>(small_extra));
  std::vector<S> values(s.values().size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = s.values()[i] * t.values()[i];
  return LagrangePolynomial<S>(s.nodes(), std::move(values));
}

/// P^p on deg(P) * (p-1) extra nodes: the lifted values raised to p.
template <Scalar S>
LagrangePolynomial<S> power(const LagrangePolynomial<S>& poly, int p, std::optional<std::type_identity_t<std::vector<S>>> extra_nodes = std::nullopt) {
  if (p < 1) throw std::invalid_argument("lagrange power: exponent must be >= 1, got " + std::to_string(p));
  const std::size_t need = poly.degree() * static_cast<std::size_t>(p - 1);
  std::vector<S> extra = extra_nodes ? std::move(*extra_nodes) : augment_nodes<S>(poly.nodes(), need);
  if (extra.size() != need)
    throw std::invalid_argument("lagrange power: need " + std::to_string(need) + " extra nodes, got " +
                                std::to_string(extra.size()));
  const auto s = detail::lift_or_keep(poly, std::span<const S>(extra));
  std::vector<S> values(s.values().size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    S v{1};
    for (int e = 0; e < p; ++e) v *= s.values()[i];
    values[i] = v;
  }
  return LagrangePolynomial<S>(s.nodes(), std::move(values));
}

}  // namespace polymul::lagrange
