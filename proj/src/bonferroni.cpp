#include "kwise/bonferroni.hpp"

#include <algorithm>
#include <stdexcept>

#include "kwise/real_roots.hpp"

namespace kwise {

BonferroniPoly bonferroni(long m, long l) {
  if (m < 0) throw std::domain_error("bonferroni: negative m");
  BonferroniPoly out{m, l, {}};
  if (l < 0) return out;
  std::vector<Rational> c(static_cast<std::size_t>(std::min(l, m) + 1));
  for (long i = 0; i <= std::min(l, m); ++i) {
    Integer b = binomial(m, i);
    c[static_cast<std::size_t>(i)] = (i % 2 == 0) ? Rational(b) : Rational(-b);
  }
  out.poly = Polynomial(std::move(c));
  return out;
}

Polynomial bonferroni_poly(long m, long l) { return bonferroni(m, l).poly; }

namespace {

// B(m,l) with the m = -1 extension needed by the identities at m = 0.
Polynomial bonf_ext(long m, long l) {
  if (m >= 0) return bonferroni_poly(m, l);
  return l == 0 ? Polynomial::constant(1) : Polynomial{};
}

Integer binom_ext(long n, long k) {
  if (n >= 0) return binomial(n, k);
  return k == 0 ? Integer(1) : Integer(0);
}

}  // namespace

Lemma1Result check_lemma1(long m, long l) {
  if (l < 0 || l > m) throw std::domain_error("check_lemma1: requires 0 <= l <= m");
  const Polynomial x = x_pow(1);
  const Polynomial lhs = bonferroni_poly(m, l);
  Lemma1Result r;

  Polynomial first = bonf_ext(m - 1, l) - x * bonf_ext(m - 1, l - 1);
  Rational sign_l = (l % 2 == 0) ? 1 : -1;
  Polynomial second = Polynomial::one_minus_x() * bonf_ext(m - 1, l - 1) +
                      Polynomial::monomial(sign_l * Rational(binom_ext(m - 1, l)), static_cast<unsigned>(l));
  r.recurrence = lhs == first && lhs == second;

  r.derivative = lhs.derivative() == Rational(-m) * bonf_ext(m - 1, l - 1);

  Polynomial decomposition = bonferroni_poly(l, l);
  for (long i = 0; i <= l - 1; ++i)
    decomposition -= Polynomial::monomial(Rational(binomial(m - l, l - i)), static_cast<unsigned>(l - i)) *
                     bonferroni_poly(m - l + i, i);
  r.decomposition = lhs == decomposition;
  return r;
}

std::vector<Rational> predicted_equality_points(long m, long l) {
  std::vector<Rational> pts;
  if (l == 1 && m >= 1) pts.emplace_back(1, m);
  if (m % 2 == 0 && l == m - 1 && m >= 2) pts.emplace_back(1, 2);
  if (l == m && m >= 1) pts.emplace_back(1);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

PositivityRegion positivity_region(long m, long l) {
  if (l < 0 || l > m) throw std::domain_error("positivity_region: requires 0 <= l <= m");
  PositivityRegion out;
  out.m = m;
  out.l = l;
  out.right_end = make_rational(1, m - l + 1);
  Polynomial b = bonferroni_poly(m, l);
  auto roots = isolate_roots(b, 0, out.right_end);
  bool irrational_root = false;
  for (auto& r : roots) {
    if (r.is_rational()) out.equality_points.push_back(r.rational());
    else irrational_root = true;
  }
  out.strict = roots.empty();
  // A root strictly inside the interval where the sign actually changes, or any
  // negative value at a sample point between roots, breaks nonnegativity.
  out.nonnegative = !irrational_root && b.sign_at(0) > 0;
  Rational prev = 0;
  for (const auto& r : out.equality_points) {
    if (r > prev && b.sign_at((prev + r) / 2) < 0) out.nonnegative = false;
    prev = r;
  }
  if (prev < out.right_end && b.sign_at((prev + out.right_end) / 2) < 0) out.nonnegative = false;
  out.predicted_points = predicted_equality_points(m, l);
  return out;
}

}  // namespace kwise
