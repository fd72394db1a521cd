#pragma once

#include <vector>

#include "kwise/polynomial.hpp"

namespace kwise {

/// B(m, l, x) = sum_{i=0..l} (-1)^i C(m, i) x^i, the alternating truncation of
/// (1 - x)^m; identically zero for negative l.
struct BonferroniPoly {
  long m = 0;
  long l = 0;
  Polynomial poly;
};

BonferroniPoly bonferroni(long m, long l);
/// Shorthand for bonferroni(m, l).poly.
Polynomial bonferroni_poly(long m, long l);

/// Results of checking the three identities as exact coefficient-wise equalities:
///   1. B(m,l) = B(m-1,l) - x B(m-1,l-1) = (1-x) B(m-1,l-1) + (-1)^l C(m-1,l) x^l
///   2. d/dx B(m,l) = -m B(m-1,l-1)
///   3. B(m,l) = B(l,l) - sum_{i<l} C(m-l,l-i) x^{l-i} B(m-l+i,i)
struct Lemma1Result {
  bool recurrence = false;
  bool derivative = false;
  bool decomposition = false;
  bool all() const { return recurrence && derivative && decomposition; }
};

/// Requires 0 <= l <= m. For m = 0 the B(-1, ., x) terms use the natural
/// extension B(-1,0,x) = 1, B(-1,-1,x) = 0, C(-1,0) = 1.
Lemma1Result check_lemma1(long m, long l);

/// Certified sign behaviour of B(m, l, .) on [0, 1/(m-l+1)].
struct PositivityRegion {
  long m = 0;
  long l = 0;
  Rational right_end;                    ///< 1/(m-l+1)
  bool nonnegative = false;              ///< no sign change anywhere on the interval
  bool strict = false;                   ///< no zero on the closed interval
  std::vector<Rational> equality_points; ///< zeros found on the interval (all rational here)
  std::vector<Rational> predicted_points;///< zeros predicted by the three equality cases
  bool matches_prediction() const { return equality_points == predicted_points; }
};

/// Equality cases: p = 1/m when l = 1; p = 1/2 when m is even and l = m - 1;
/// p = 1 when l = m >= 1.
std::vector<Rational> predicted_equality_points(long m, long l);

/// Requires 0 <= l <= m.
PositivityRegion positivity_region(long m, long l);

}  // namespace kwise
