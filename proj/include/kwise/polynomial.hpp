#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kwise/rational.hpp"

namespace kwise {

/// Dense univariate polynomial over the rationals. coeffs()[i] multiplies x^i;
/// trailing zeros are always trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, unsigned degree);
  /// 1 - x
  static Polynomial one_minus_x();

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Rational coeff(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  /// Sign of f(x) without materializing more than needed.
  int sign_at(const Rational& x) const { return sgn((*this)(x)); }

  Polynomial derivative() const;
  /// f(1 - x)
  Polynomial compose_one_minus() const;
  /// f(g(x))
  Polynomial compose(const Polynomial& g) const;

  /// Scales to leading coefficient 1 (zero stays zero).
  Polynomial monic() const;
  /// Integer coefficients with gcd 1 and positive leading coefficient.
  std::vector<Integer> primitive_integer() const;
  /// The same polynomial rescaled to primitive integer coefficients.
  Polynomial primitive() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form in variable `var`, e.g. "1 - 7p + 21p^2".
  std::string to_string(const std::string& var = "p") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Euclidean division: returns (quotient, remainder). Throws on a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// f / gcd(f, f'), made monic.
Polynomial square_free_part(const Polynomial& f);
/// x^n
Polynomial x_pow(unsigned n);

}  // namespace kwise
