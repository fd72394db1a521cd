#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace kwise {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational scalar. GMP keeps every value produced by arithmetic in
/// canonical form (lowest terms, positive denominator); values built from a
/// numerator/denominator pair go through make_rational(), which canonicalizes.
using Rational = mpq_class;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Rational make_rational(const Integer& num, const Integer& den);

/// C(n, k) for n >= 0; zero when k < 0 or k > n.
Integer binomial(long n, long k);

/// Parses "a/b", an integer, or a plain decimal such as "0.125" or "-1.5".
/// Decimals are scaled by a power of ten; floating point is never involved.
Rational parse_rational(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

/// Decimal rendering with `digits` digits after the point, rounded half-even.
std::string to_decimal(const Rational& value, int digits);

/// Rounds to `digits` decimal places, half-even, and returns the exact result.
Rational round_half_even(const Rational& value, int digits);

int sign(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace kwise
