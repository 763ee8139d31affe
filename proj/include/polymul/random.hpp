#pragma once

#include "polymul/scalar.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace polymul {

/// Seeded generator with a fixed mapping to doubles, so sequences are
/// identical across standard library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [-1, 1).
  double symmetric() { return 2.0 * unit() - 1.0; }

  /// Uniform integer on [0, bound).
  std::size_t index(std::size_t bound) { return bound == 0 ? 0 : static_cast<std::size_t>(engine_() % bound); }

  /// A coefficient in [-1, 1]; multiples of 1/1000 for exact scalars.
  template <Scalar S>
  S coefficient() {
    if constexpr (ScalarTraits<S>::exact) {
      const auto k = static_cast<long long>(index(2001)) - 1000;
      return S{make_rational(k, 1000)};
    } else {
      return S{symmetric()};
    }
  }

  template <Scalar S>
  std::vector<S> coefficients(std::size_t count) {
    std::vector<S> v;
    v.reserve(count);
    for (std::size_t i = 0; i < count; ++i) v.push_back(coefficient<S>());
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace polymul
