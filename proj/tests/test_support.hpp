#pragma once

#include <polymul.hpp>

#include <string>
#include <vector>

namespace polymul::testing {

inline std::vector<std::string> registered_names() {
  std::vector<std::string> names;
  for (const auto& info : kRegisteredBases) names.emplace_back(info.name);
  return names;
}

inline bool allows_exact(const std::string& name) { return find_registered(name)->mode == ScalarMode::exact_rational; }

/// Registered basis by name; Newton gets `count` nodes -1 + 2j/(count-1) scaled to stay distinct.
template <Scalar S>
BasisPtr<S> test_basis(const std::string& name, std::size_t count = 80) {
  if (name != "newton") return builtin_basis<S>(name);
  std::vector<S> nodes;
  for (std::size_t j = 0; j < count; ++j)
    nodes.push_back(ratio<S>(2 * static_cast<long long>(j) - static_cast<long long>(count - 1), static_cast<long long>(count)));
  return builtin_basis<S>(name, nodes);
}

inline Rational q(long long num, long long den = 1) { return make_rational(num, den); }

}  // namespace polymul::testing
