#include "kwise/solver.hpp"

#include <sstream>

#include "kwise/bonferroni.hpp"

namespace kwise {

namespace {

void check_domain(int n, int k, const Rational& p) {
  if (n < 1 || k < 1 || k > n)
    throw ParameterError("requires 1 <= k <= n (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  if (p < 0 || p > 1) throw ParameterError("requires 0 <= p <= 1 (got p=" + to_string(p) + ")");
}

bool trivial_case(int n, int k, const Rational& p) { return k == n || k == 1 || p == 0 || p == 1; }

Rational trivial_value(int n, int k, const Rational& p) {
  if (p == 0) return 0;
  if (p == 1) return 1;
  if (k == 1) return p;
  return pow(p, static_cast<unsigned>(n));
}

OptimizingDistribution trivial_distribution(int n, int k, const Rational& p) {
  std::vector<Rational> v(static_cast<std::size_t>(n + 1));
  if (p == 0) {
    v[0] = 1;
  } else if (p == 1) {
    v[static_cast<std::size_t>(n)] = 1;
  } else if (k == 1) {
    v[0] = 1 - p;
    v[static_cast<std::size_t>(n)] = p;
  } else {
    for (int i = 0; i <= n; ++i)
      v[static_cast<std::size_t>(i)] = pow(p, static_cast<unsigned>(i)) * pow(1 - p, static_cast<unsigned>(n - i));
  }
  return OptimizingDistribution::from_v(n, k, p, std::move(v));
}

bool contains(const ExactInterval& iv, const Rational& p) {
  ExactReal x(p);
  return compare(iv.lo, x) <= 0 && compare(x, iv.hi) <= 0;
}

}  // namespace

Rational m_value(const PiecewisePolynomial& m, const Rational& p) {
  check_domain(m.n(), m.k(), p);
  return m(p);
}

Rational m_value(int n, int k, const Rational& p, EvalMode mode) {
  check_domain(n, k, p);
  std::optional<Rational> synthesized;
  if (mode != EvalMode::oracle)
    synthesized = trivial_case(n, k, p) ? trivial_value(n, k, p) : piecewise(n, k)(p);
  if (mode == EvalMode::piecewise) return *synthesized;
  Rational oracle = simplex_solve(n, k, p).value;
  if (synthesized && *synthesized != oracle)
    throw OracleMismatch("M(" + std::to_string(n) + "," + std::to_string(k) + "," + to_string(p) +
                         "): piecewise gives " + to_string(*synthesized) + ", simplex gives " + to_string(oracle));
  return oracle;
}

// ---------------------------------------------------------------------------

DistributionReport optimizing_distribution(const PiecewisePolynomial& m, const Rational& p) {
  const int n = m.n(), k = m.k();
  check_domain(n, k, p);
  DistributionReport report;
  const DualBasis& basis = m.bases()[m.piece_index(p)];
  report.basis = basis;
  report.distribution = basic_solution(basis, p);
  if (auto why = report.distribution.violation(); !why.empty())
    throw std::logic_error("optimal basis " + basis.to_string() + " infeasible at p=" + to_string(p) + ": " + why);

  ClosedFormCatalog catalog = closed_forms(n, k);
  std::vector<const ClosedForm*> forms{&catalog.first};
  for (const auto* f : {&catalog.second, &catalog.last, &catalog.second_to_last})
    if (*f) forms.push_back(&**f);
  for (const auto& f : catalog.full) forms.push_back(&f);
  for (const ClosedForm* f : forms) {
    if (!f->distribution || !contains(f->validity, p)) continue;
    report.closed_forms_checked.push_back(f->name);
    for (int i = 0; i <= n; ++i)
      if ((*f->distribution)[static_cast<std::size_t>(i)](p) != report.distribution.v[static_cast<std::size_t>(i)])
        report.closed_forms_match = false;
  }
  if (!report.closed_forms_match)
    throw std::logic_error("closed-form distribution disagrees with basis " + basis.to_string() + " at p=" +
                           to_string(p));
  return report;
}

DistributionReport optimizing_distribution(int n, int k, const Rational& p) {
  check_domain(n, k, p);
  if (trivial_case(n, k, p)) {
    DistributionReport report;
    report.distribution = trivial_distribution(n, k, p);
    if (auto why = report.distribution.violation(); !why.empty())
      throw std::logic_error("trivial distribution infeasible: " + why);
    return report;
  }
  return optimizing_distribution(piecewise(n, k), p);
}

// ---------------------------------------------------------------------------

bool UpperBoundReport::all_hold() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

UpperBoundReport verify_upper_bounds(const PiecewisePolynomial& m, const Rational& p) {
  const int n = m.n(), k = m.k();
  check_domain(n, k, p);
  UpperBoundReport r;
  r.value = m(p);
  for (int mm = 0; mm <= k; mm += 2) {
    BoundCheck c;
    c.label = "m=" + std::to_string(mm);
    c.m = mm;
    c.bound = upper_bound_poly(n, k, mm)(p);
    c.holds = r.value <= c.bound;
    c.tight = r.value == c.bound;
    r.checks.push_back(std::move(c));
  }
  if (k % 2 == 0) {
    BoundCheck c;
    c.label = "B(n,k,1-p)";
    c.bound = bonferroni_poly(n, k)(1 - p);
    c.holds = r.value <= c.bound;
    c.tight = r.value == c.bound;
    r.checks.push_back(std::move(c));
  }
  return r;
}

UpperBoundReport verify_upper_bounds(int n, int k, const Rational& p) {
  check_domain(n, k, p);
  if (k < 2 || k > n - 1) throw ParameterError("upper bound checks require 2 <= k <= n-1");
  return verify_upper_bounds(piecewise(n, k), p);
}

namespace {

PiecewisePolynomial times_x(const PiecewisePolynomial& m, int n) {
  std::vector<Polynomial> pieces;
  for (const auto& piece : m.pieces()) pieces.push_back(x_pow(1) * piece);
  return PiecewisePolynomial(n, m.k() + 1, m.breakpoints(), std::move(pieces), m.bases());
}

}  // namespace

bool verify_odd_reduction(int n, int k) {
  if (k % 2 != 0 || k < 2 || k > n - 2) throw ParameterError("odd reduction requires even k with 2 <= k <= n-2");
  return same_function(piecewise(n, k + 1), times_x(piecewise(n - 1, k), n));
}

// ---------------------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "n/a";
  }
  return "?";
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"3", "4", "5", "6", "7", "props", "odd-reduction"};
  return ids;
}

namespace {

/// Certifies f >= 0 on the closed interval.
bool nonnegative_on(const Polynomial& f, const ExactInterval& iv) {
  if (f.is_zero()) return true;
  std::vector<ExactReal> pts{iv.lo};
  for (auto& r : isolate_roots(f, iv.lo.lower(), iv.hi.upper()))
    if (iv.lo < r && r < iv.hi) pts.push_back(std::move(r));
  pts.push_back(iv.hi);
  for (std::size_t c = 0; c + 1 < pts.size(); ++c)
    if (f.sign_at(rational_between(pts[c], pts[c + 1])) < 0) return false;
  return true;
}

bool distribution_matches(const ClosedForm& form, const FeasibilityFunctions& f, int n) {
  if (!form.distribution) return true;
  for (int i = 0; i <= n; ++i) {
    auto it = std::find(f.indices.begin(), f.indices.end(), i);
    Polynomial basic = it == f.indices.end() ? Polynomial{} : f.v_of(i);
    if (!((*form.distribution)[static_cast<std::size_t>(i)] == basic)) return false;
  }
  return true;
}

struct CheckBuilder {
  TheoremCheck check;
  std::ostringstream detail;
  bool ok = true;

  CheckBuilder(std::string id, std::string description) {
    check.id = std::move(id);
    check.description = std::move(description);
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << "FAILED: " << what << "; ";
    }
  }
  void note(const std::string& s) { detail << s << "; "; }
  TheoremCheck done() {
    check.verdict = ok ? Verdict::pass : Verdict::fail;
    check.detail = detail.str();
    if (check.detail.size() >= 2) check.detail.resize(check.detail.size() - 2);
    return check;
  }
};

TheoremCheck not_applicable(const std::string& id, const std::string& description, const std::string& why) {
  TheoremCheck c{id, description, Verdict::not_applicable, why};
  return c;
}

void match_form(CheckBuilder& b, const PiecewisePolynomial& m, std::size_t piece, const ClosedForm& form) {
  const int n = m.n();
  b.expect(m.pieces()[piece] == form.poly, "piece " + std::to_string(piece + 1) + " is " +
                                               m.pieces()[piece].to_string() + ", expected " + form.poly.to_string());
  auto iv = m.interval(piece);
  b.expect(iv.lo == form.validity.lo, "left endpoint " + iv.lo.to_string() + " vs " + form.validity.lo.to_string());
  b.expect(iv.hi == form.validity.hi, "right endpoint " + iv.hi.to_string() + " vs " + form.validity.hi.to_string());
  if (form.basis) {
    b.expect(m.bases()[piece] == *form.basis,
             "basis " + m.bases()[piece].to_string() + " vs " + form.basis->to_string());
    if (m.bases()[piece] == *form.basis)
      b.expect(distribution_matches(form, feasibility_functions(m.bases()[piece]), n), "closed-form distribution");
  }
}

TheoremCheck check_upper_bounds(const PiecewisePolynomial& m) {
  const int n = m.n(), k = m.k();
  CheckBuilder b("3", "upper bounds p^(k-m) B(n-k+m,m,p)/C(n-k+m-1,m) and B(n,k,1-p)");
  std::vector<std::pair<std::string, Polynomial>> bounds;
  for (int mm = 0; mm <= k; mm += 2) bounds.emplace_back("m=" + std::to_string(mm), upper_bound_poly(n, k, mm));
  if (k % 2 == 0) bounds.emplace_back("B(n,k,1-p)", bonferroni_poly(n, k).compose_one_minus());
  for (const auto& [label, poly] : bounds)
    for (std::size_t i = 0; i < m.size(); ++i)
      b.expect(nonnegative_on(poly - m.pieces()[i], m.interval(i)),
               "bound " + label + " violated on piece " + std::to_string(i + 1));
  b.expect(m.pieces().front() == upper_bound_poly(n, k, 0), "m=0 bound tight on first interval");
  if (k <= n - 2 && m.size() > 1) b.expect(m.pieces()[1] == upper_bound_poly(n, k, 2), "m=2 bound tight on second interval");
  if (k % 2 == 0) b.expect(m.pieces().back() == bounds.back().second, "B(n,k,1-p) tight on last interval");
  b.note("certified on all " + std::to_string(m.size()) + " pieces");
  return b.done();
}

TheoremCheck check_first(const PiecewisePolynomial& m) {
  CheckBuilder b("4", "first interval: M = p^k exactly on [0, 1/(n-k+1)]");
  match_form(b, m, 0, first_interval_form(m.n(), m.k()));
  if (m.size() > 1) b.expect(!(m.pieces()[1] == x_pow(static_cast<unsigned>(m.k()))), "M differs from p^k past 1/(n-k+1)");
  b.note("p_1 = " + m.breakpoints()[1].to_string());
  return b.done();
}

TheoremCheck check_last(const PiecewisePolynomial& m) {
  CheckBuilder b("5", "last interval: M = B(n,k,1-p) on [1-1/(n-k+1), 1]");
  match_form(b, m, m.size() - 1, last_interval_form(m.n(), m.k()));
  b.note("pbar_1 = " + m.breakpoints()[m.size() - 1].to_string());
  return b.done();
}

TheoremCheck check_second(const PiecewisePolynomial& m) {
  CheckBuilder b("6", "second interval formula and right endpoint p_2");
  if (m.size() < 2) {
    b.expect(false, "fewer than two pieces");
    return b.done();
  }
  ClosedForm form = second_interval_form(m.n(), m.k());
  match_form(b, m, 1, form);
  b.note("p_2 = " + form.validity.hi.decimal());
  return b.done();
}

TheoremCheck check_second_to_last(const PiecewisePolynomial& m) {
  CheckBuilder b("7", "second-to-last interval formula, left endpoint pbar_2 = 1 - p_2");
  const int n = m.n(), k = m.k();
  if (m.size() < 2) {
    b.expect(false, "fewer than two pieces");
    return b.done();
  }
  ClosedForm form = second_to_last_interval_form(n, k);
  match_form(b, m, m.size() - 2, form);
  ExactReal p2 = second_breakpoint(n, k);
  b.expect(form.validity.lo == p2.one_minus(), "pbar_2 = 1 - p_2");
  b.note("pbar_2 = " + form.validity.lo.decimal());
  return b.done();
}

TheoremCheck check_props(const PiecewisePolynomial& m) {
  const int n = m.n(), k = m.k();
  CheckBuilder b("props", k == 2 ? "complete k=2 formula" : "complete k=3 formula");
  auto catalog = k == 2 ? k2_catalog(n) : k3_catalog(n);
  b.expect(catalog.size() == m.size(),
           "piece count " + std::to_string(m.size()) + " vs " + std::to_string(catalog.size()));
  for (std::size_t i = 0; i < std::min(catalog.size(), m.size()); ++i) match_form(b, m, i, catalog[i]);
  return b.done();
}

}  // namespace

std::vector<TheoremCheck> verify_theorems(const PiecewisePolynomial& m, const std::set<std::string>& which) {
  const int n = m.n(), k = m.k();
  const bool all = which.count("all") > 0;
  for (const auto& id : which)
    if (id != "all" && std::find(theorem_ids().begin(), theorem_ids().end(), id) == theorem_ids().end())
      throw ParameterError("unknown theorem group '" + id + "'");
  auto wanted = [&](const std::string& id) { return all || which.count(id) > 0; };
  auto refuse = [&](const std::string& id, const std::string& why) -> std::optional<TheoremCheck> {
    if (!all) throw ParameterError("theorem group " + id + " rejected: " + why);
    return not_applicable(id, "", why);
  };

  std::vector<TheoremCheck> out;
  if (wanted("3")) out.push_back(check_upper_bounds(m));
  if (wanted("4")) out.push_back(check_first(m));
  if (wanted("5")) {
    if (k % 2 != 0) out.push_back(*refuse("5", "k odd"));
    else out.push_back(check_last(m));
  }
  if (wanted("6")) {
    if (k > n - 2) out.push_back(*refuse("6", "requires k <= n-2"));
    else out.push_back(check_second(m));
  }
  if (wanted("7")) {
    if (k % 2 != 0) out.push_back(*refuse("7", "k odd"));
    else if (k > n - 2) out.push_back(*refuse("7", "requires k <= n-2"));
    else out.push_back(check_second_to_last(m));
  }
  if (wanted("props")) {
    if (k != 2 && k != 3) out.push_back(*refuse("props", "complete formulas exist for k = 2, 3 only"));
    else out.push_back(check_props(m));
  }
  if (wanted("odd-reduction")) {
    int even_k = k % 2 == 0 ? k : k - 1;
    int top_n = n;
    if (even_k < 2 || even_k > top_n - 2) {
      out.push_back(*refuse("odd-reduction", "needs even k' = " + std::to_string(even_k) + " with 2 <= k' <= n-2"));
    } else {
      CheckBuilder b("odd-reduction", "M(n,k'+1,p) = p M(n-1,k',p) for k' = " + std::to_string(even_k));
      b.expect(verify_odd_reduction(top_n, even_k), "piecewise identity");
      out.push_back(b.done());
    }
  }
  return out;
}

std::vector<TheoremCheck> verify_theorems(int n, int k, const std::set<std::string>& which) {
  if (k < 2 || k > n - 1) throw ParameterError("theorem validators require 2 <= k <= n-1");
  return verify_theorems(piecewise(n, k), which);
}

}  // namespace kwise
