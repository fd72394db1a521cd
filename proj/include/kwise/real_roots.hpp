#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kwise/polynomial.hpp"

namespace kwise {

/// Digits used when rendering an algebraic number as a decimal.
inline constexpr int kDefaultDigits = 12;

/// An irrational real root of a square-free rational polynomial with no
/// rational roots, pinned down by a rational isolating interval [lo, hi]
/// that contains exactly one root. The endpoints are never roots, so the
/// polynomial changes sign strictly across the interval.
class AlgebraicNumber {
 public:
  AlgebraicNumber(Polynomial defining, Rational lo, Rational hi);

  const Polynomial& defining() const { return defining_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }

  /// Halves the isolating interval. The designated root never changes.
  void refine();
  /// Refines until the width is at most `width`.
  void refine_to(const Rational& width);

  /// Sign of f at the root, computed exactly.
  int sign_of(const Polynomial& f) const;

  /// Narrows the defining polynomial to a factor `g` that vanishes at this root.
  /// The caller guarantees g(root) = 0.
  AlgebraicNumber with_defining(const Polynomial& g) const;

  std::string decimal(int digits = kDefaultDigits) const;
  double approx() const;

 private:
  Polynomial defining_;
  Rational lo_, hi_;
  int lo_sign_;
};

/// A real number that is either an exact rational or an irrational algebraic number.
class ExactReal {
 public:
  ExactReal() : value_(Rational(0)) {}
  ExactReal(Rational r) : value_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ExactReal(int r) : value_(Rational(r)) {}        // NOLINT(google-explicit-constructor)
  ExactReal(AlgebraicNumber a) : value_(std::move(a)) {}  // NOLINT(google-explicit-constructor)

  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  const Rational& rational() const { return std::get<Rational>(value_); }
  const AlgebraicNumber& algebraic() const { return std::get<AlgebraicNumber>(value_); }
  AlgebraicNumber& algebraic() { return std::get<AlgebraicNumber>(value_); }

  /// Rational lower/upper bounds (equal to the value for rationals).
  Rational lower() const;
  Rational upper() const;

  int sign_of(const Polynomial& f) const;
  std::string decimal(int digits = kDefaultDigits) const;
  /// Exact string for rationals ("1/7"), decimal otherwise.
  std::string to_string(int digits = kDefaultDigits) const;
  double approx() const;

  /// 1 - x, exactly.
  ExactReal one_minus() const;

  friend std::strong_ordering compare(const ExactReal& a, const ExactReal& b);
  friend bool operator==(const ExactReal& a, const ExactReal& b) { return compare(a, b) == 0; }
  friend bool operator<(const ExactReal& a, const ExactReal& b) { return compare(a, b) < 0; }

 private:
  std::variant<Rational, AlgebraicNumber> value_;
};

/// Rational strictly between a and b; requires a < b.
Rational rational_between(const ExactReal& a, const ExactReal& b);

/// Number of distinct real roots of f in the half-open interval (a, b].
/// Requires f nonzero.
int sturm_count(const Polynomial& f, const Rational& a, const Rational& b);

/// Every distinct real root of f in the closed interval [lo, hi], increasing.
/// Rational roots come back as exact rationals. Throws std::domain_error on
/// the zero polynomial.
std::vector<ExactReal> isolate_roots(const Polynomial& f, const Rational& lo, const Rational& hi);

/// Rational roots of f (any real value), found exactly and returned sorted.
std::vector<Rational> rational_roots(const Polynomial& f);

}  // namespace kwise
