#pragma once

#include <random>

#include "kwise/rational.hpp"

namespace kwise::testing {

inline Rational q(long a, long b = 1) { return make_rational(a, b); }

/// Uniform rational in [0, 1] with denominator at most max_den.
inline Rational random_unit(std::mt19937& rng, long max_den = 50) {
  std::uniform_int_distribution<long> den(1, max_den);
  long d = den(rng);
  std::uniform_int_distribution<long> num(0, d);
  return make_rational(num(rng), d);
}

}  // namespace kwise::testing
