#include "kwise/real_roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace kwise {

namespace {

/// Sturm sequence of a square-free polynomial. Remainders are rescaled by
/// positive constants only, which preserves every sign the count depends on.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& f) {
    seq_.push_back(f);
    if (f.degree() <= 0) return;
    seq_.push_back(f.derivative());
    while (true) {
      const Polynomial& a = seq_[seq_.size() - 2];
      const Polynomial& b = seq_.back();
      Polynomial r = -divmod(a, b).second;
      if (r.is_zero()) break;
      r *= Rational(1) / abs(r.leading());
      seq_.push_back(std::move(r));
    }
  }

  int variations(const Rational& x) const {
    int count = 0;
    int last = 0;
    for (const auto& p : seq_) {
      int s = p.sign_at(x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Distinct roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

 private:
  std::vector<Polynomial> seq_;
};

struct RootCell {
  Rational a, b;  // root in (a, b), or exactly `a` when exact
  bool exact = false;
};

/// Splits (a, b] (with known root count) into cells each holding one root.
void bisect(const Polynomial& f, const SturmChain& chain, const Rational& a, const Rational& b, int count,
            std::vector<RootCell>& out) {
  if (count == 0) return;
  if (count == 1) {
    if (f.sign_at(b) == 0) {
      out.push_back({b, b, true});
      return;
    }
    Rational lo = a, hi = b;
    // The left endpoint may itself be a (different) root; shrink away from it.
    while (f.sign_at(lo) == 0) {
      Rational mid = (lo + hi) / 2;
      if (f.sign_at(mid) == 0) {
        out.push_back({mid, mid, true});
        return;
      }
      if (chain.count(lo, mid) == 1) hi = mid; else lo = mid;
    }
    out.push_back({lo, hi, false});
    return;
  }
  Rational mid = (a + b) / 2;
  int left = chain.count(a, mid);
  bisect(f, chain, a, mid, left, out);
  bisect(f, chain, mid, b, count - left, out);
}

/// Decides whether the single simple root of f in (lo, hi) is rational.
/// A rational root p/q in lowest terms of a primitive integer polynomial has
/// q dividing the leading coefficient L, so once the interval is narrower than
/// 1/L it holds at most one candidate N/L.
std::optional<Rational> rational_root_in(const Polynomial& f, Rational lo, Rational hi) {
  auto ints = f.primitive_integer();
  Integer lead = abs(ints.back());
  Rational limit(1, 1);
  limit /= Rational(lead);
  int lo_sign = f.sign_at(lo);
  while (hi - lo >= limit) {
    Rational mid = (lo + hi) / 2;
    int s = f.sign_at(mid);
    if (s == 0) return mid;
    if (s == lo_sign) lo = mid; else hi = mid;
  }
  Rational scaled = lo * Rational(lead);
  Integer candidate;
  mpz_cdiv_q(candidate.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r = make_rational(candidate, lead);
  if (r > lo && r < hi && f.sign_at(r) == 0) return r;
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(Polynomial defining, Rational lo, Rational hi)
    : defining_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
  lo_sign_ = defining_.sign_at(lo_);
  if (lo_ >= hi_ || lo_sign_ == 0 || defining_.sign_at(hi_) != -lo_sign_)
    throw std::invalid_argument("AlgebraicNumber: interval does not isolate a simple irrational root");
}

void AlgebraicNumber::refine() {
  Rational mid = (lo_ + hi_) / 2;
  int s = defining_.sign_at(mid);
  // s == 0 would make the root rational, which the invariant excludes.
  if (s == lo_sign_) lo_ = mid; else hi_ = mid;
}

void AlgebraicNumber::refine_to(const Rational& width) {
  while (hi_ - lo_ > width) refine();
}

int AlgebraicNumber::sign_of(const Polynomial& f) const {
  if (f.is_zero()) return 0;
  Polynomial h = gcd(f, defining_);
  if (h.degree() >= 1 && SturmChain(square_free_part(h)).count(lo_, hi_) >= 1) return 0;
  AlgebraicNumber copy = *this;
  SturmChain chain(square_free_part(f));
  while (f.sign_at(copy.lo_) == 0 || chain.count(copy.lo_, copy.hi_) != 0) copy.refine();
  return f.sign_at(copy.lo_);
}

AlgebraicNumber AlgebraicNumber::with_defining(const Polynomial& g) const {
  return AlgebraicNumber(square_free_part(g).primitive(), lo_, hi_);
}

std::string AlgebraicNumber::decimal(int digits) const {
  AlgebraicNumber copy = *this;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits + 2));
  copy.refine_to(Rational(1) / Rational(scale));
  while (true) {
    std::string a = to_decimal(copy.lo_, digits);
    if (a == to_decimal(copy.hi_, digits)) return a;
    copy.refine();
  }
}

double AlgebraicNumber::approx() const {
  AlgebraicNumber copy = *this;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 64);
  copy.refine_to(Rational(1) / Rational(scale));
  return Rational((copy.lo_ + copy.hi_) / 2).get_d();
}

// ---------------------------------------------------------------------------

Rational ExactReal::lower() const { return is_rational() ? rational() : algebraic().lo(); }
Rational ExactReal::upper() const { return is_rational() ? rational() : algebraic().hi(); }

int ExactReal::sign_of(const Polynomial& f) const {
  return is_rational() ? f.sign_at(rational()) : algebraic().sign_of(f);
}

std::string ExactReal::decimal(int digits) const {
  return is_rational() ? to_decimal(rational(), digits) : algebraic().decimal(digits);
}

std::string ExactReal::to_string(int digits) const {
  return is_rational() ? kwise::to_string(rational()) : algebraic().decimal(digits);
}

double ExactReal::approx() const { return is_rational() ? rational().get_d() : algebraic().approx(); }

ExactReal ExactReal::one_minus() const {
  if (is_rational()) return Rational(1 - rational());
  const auto& a = algebraic();
  return AlgebraicNumber(a.defining().compose_one_minus(), 1 - a.hi(), 1 - a.lo());
}

namespace {

std::strong_ordering compare_rational_algebraic(const Rational& r, const AlgebraicNumber& a) {
  if (r <= a.lo()) return std::strong_ordering::less;
  if (r >= a.hi()) return std::strong_ordering::greater;
  int lo_sign = a.defining().sign_at(a.lo());
  int r_sign = a.defining().sign_at(r);
  if (r_sign == 0) return std::strong_ordering::equal;
  return r_sign == lo_sign ? std::strong_ordering::less : std::strong_ordering::greater;
}

bool algebraic_equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  Rational lo = std::max<Rational>(a.lo(), b.lo());
  Rational hi = std::min<Rational>(a.hi(), b.hi());
  if (lo >= hi) return false;
  Polynomial h = gcd(a.defining(), b.defining());
  if (h.degree() < 1) return false;
  // h divides both defining polynomials, so a root of h inside both isolating
  // intervals is simultaneously the designated root of a and of b.
  return SturmChain(square_free_part(h)).count(lo, hi) >= 1;
}

}  // namespace

std::strong_ordering compare(const ExactReal& x, const ExactReal& y) {
  if (x.is_rational() && y.is_rational()) return cmp(x.rational(), y.rational()) <=> 0;
  if (x.is_rational()) return compare_rational_algebraic(x.rational(), y.algebraic());
  if (y.is_rational()) {
    auto c = compare_rational_algebraic(y.rational(), x.algebraic());
    return c == std::strong_ordering::less ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  AlgebraicNumber a = x.algebraic();
  AlgebraicNumber b = y.algebraic();
  if (a.hi() <= b.lo()) return std::strong_ordering::less;
  if (b.hi() <= a.lo()) return std::strong_ordering::greater;
  if (algebraic_equal(a, b)) return std::strong_ordering::equal;
  while (true) {
    if (a.hi() <= b.lo()) return std::strong_ordering::less;
    if (b.hi() <= a.lo()) return std::strong_ordering::greater;
    if (a.width() >= b.width()) a.refine(); else b.refine();
  }
}

Rational rational_between(const ExactReal& x, const ExactReal& y) {
  ExactReal a = x, b = y;
  while (!(a.upper() < b.lower())) {
    bool refine_a = !a.is_rational() && (b.is_rational() || a.algebraic().width() >= b.algebraic().width());
    if (refine_a) a.algebraic().refine();
    else if (!b.is_rational()) b.algebraic().refine();
    else throw std::invalid_argument("rational_between: arguments not ordered");
  }
  return (a.upper() + b.lower()) / 2;
}

int sturm_count(const Polynomial& f, const Rational& a, const Rational& b) {
  if (f.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
  return SturmChain(square_free_part(f)).count(a, b);
}

std::vector<ExactReal> isolate_roots(const Polynomial& f, const Rational& lo, const Rational& hi) {
  if (f.is_zero()) throw std::domain_error("isolate_roots: zero polynomial");
  if (lo > hi) throw std::invalid_argument("isolate_roots: empty interval");
  std::vector<ExactReal> out;
  if (f.degree() == 0) return out;
  Polynomial g = square_free_part(f);
  if (g.sign_at(lo) == 0) out.emplace_back(lo);
  if (lo == hi) return out;

  SturmChain chain(g);
  std::vector<RootCell> cells;
  bisect(g, chain, lo, hi, chain.count(lo, hi), cells);

  std::vector<std::size_t> irrational;
  Polynomial reduced = g;
  std::vector<std::optional<Rational>> found(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].exact) {
      found[i] = cells[i].a;
    } else {
      found[i] = rational_root_in(g, cells[i].a, cells[i].b);
    }
    if (found[i]) reduced = divmod(reduced, Polynomial{-*found[i], Rational(1)}).first;
  }
  reduced = reduced.primitive();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (found[i]) out.emplace_back(*found[i]);
    else out.emplace_back(AlgebraicNumber(reduced, cells[i].a, cells[i].b));
  }
  return out;
}

std::vector<Rational> rational_roots(const Polynomial& f) {
  if (f.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
  if (f.degree() <= 0) return {};
  // Cauchy bound: every root satisfies |x| <= 1 + max |a_i / a_n|.
  Rational bound = 0;
  for (int i = 0; i < f.degree(); ++i) bound = std::max<Rational>(bound, Rational(abs(f.coeff(i) / f.leading())));
  bound += 1;
  std::vector<Rational> out;
  for (auto& r : isolate_roots(f, -bound, bound))
    if (r.is_rational()) out.push_back(r.rational());
  return out;
}

}  // namespace kwise
