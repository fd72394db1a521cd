#include "kwise/piecewise.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace kwise {

std::string ExactInterval::length_decimal(int digits) const {
  if (lo.is_rational() && hi.is_rational()) return to_decimal(hi.rational() - lo.rational(), digits);
  // Bracket the length tightly enough that rounding is decided.
  ExactReal a = lo, b = hi;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits + 3));
  Rational eps = Rational(1) / Rational(scale);
  while (true) {
    if (!a.is_rational()) a.algebraic().refine_to(eps);
    if (!b.is_rational()) b.algebraic().refine_to(eps);
    std::string low = to_decimal(b.lower() - a.upper(), digits);
    if (low == to_decimal(b.upper() - a.lower(), digits)) return low;
    eps /= 16;
  }
}

double ExactInterval::length_approx() const { return hi.approx() - lo.approx(); }

namespace {

/// Sorted distinct union of the given points. Equal algebraic points get the
/// gcd of their defining polynomials as a tighter description.
std::vector<ExactReal> merge_points(std::vector<ExactReal> pts) {
  std::sort(pts.begin(), pts.end(), [](const ExactReal& a, const ExactReal& b) { return a < b; });
  std::vector<ExactReal> out;
  for (auto& x : pts) {
    if (!out.empty() && out.back() == x) {
      if (!x.is_rational() && !out.back().is_rational()) {
        const auto& prev = out.back().algebraic();
        Polynomial g = gcd(prev.defining(), x.algebraic().defining());
        if (g.degree() < prev.defining().degree()) out.back() = prev.with_defining(g);
      }
      continue;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

std::optional<ExactInterval> feasibility_interval(const FeasibilityFunctions& functions) {
  std::vector<const Polynomial*> polys;
  std::vector<ExactReal> pts{ExactReal(0), ExactReal(1)};
  for (const auto& v : functions.v) {
    if (v.is_zero()) continue;
    polys.push_back(&v);
    if (v.degree() >= 1)
      for (auto& r : isolate_roots(v, 0, 1)) pts.push_back(std::move(r));
  }
  pts = merge_points(std::move(pts));

  // Sign of every polynomial is constant on each open cell between consecutive points.
  std::vector<bool> feasible(pts.size() - 1);
  for (std::size_t c = 0; c + 1 < pts.size(); ++c) {
    Rational sample = rational_between(pts[c], pts[c + 1]);
    feasible[c] = std::all_of(polys.begin(), polys.end(), [&](const Polynomial* f) { return f->sign_at(sample) > 0; });
  }

  std::optional<ExactInterval> found;
  for (std::size_t c = 0; c < feasible.size();) {
    if (!feasible[c]) {
      ++c;
      continue;
    }
    std::size_t end = c;
    while (end + 1 < feasible.size() && feasible[end + 1]) ++end;
    if (found) {
      std::ostringstream os;
      os << "non-interval feasibility region for basis {";
      for (std::size_t i = 0; i < functions.indices.size(); ++i) os << (i ? "," : "") << functions.indices[i];
      os << "}: components [" << found->lo.to_string() << ", " << found->hi.to_string() << "] and ["
         << pts[c].to_string() << ", " << pts[end + 1].to_string() << "]";
      throw NonIntervalFeasibility(os.str());
    }
    found = ExactInterval{pts[c], pts[end + 1]};
    c = end + 1;
  }
  return found;
}

std::vector<RealizableBasis> realizable_bases(int n, int k, unsigned jobs) {
  std::vector<DualBasis> all = enumerate_dual_bases(n, k);
  std::vector<std::optional<RealizableBasis>> results(all.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= all.size()) return;
      try {
        auto f = feasibility_functions(all[i]);
        if (auto iv = feasibility_interval(f)) results[i] = RealizableBasis{all[i], std::move(*iv), std::move(f)};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = all.size();
      }
    }
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(all.size())));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RealizableBasis> out;
  for (auto& r : results)
    if (r) out.push_back(std::move(*r));
  return out;
}

// --------------------------------------------------------------------------

PiecewisePolynomial::PiecewisePolynomial(int n, int k, std::vector<ExactReal> breakpoints,
                                         std::vector<Polynomial> pieces, std::vector<DualBasis> bases)
    : n_(n), k_(k), breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), bases_(std::move(bases)) {
  if (pieces_.empty() || breakpoints_.size() != pieces_.size() + 1 || bases_.size() != pieces_.size())
    throw std::invalid_argument("PiecewisePolynomial: inconsistent sizes");
}

std::size_t PiecewisePolynomial::piece_index(const Rational& p) const {
  if (p < 0 || p > 1) throw std::domain_error("PiecewisePolynomial: p outside [0, 1]");
  ExactReal x(p);
  // First piece whose right endpoint is >= p.
  std::size_t lo = 0, hi = pieces_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (compare(x, breakpoints_[mid + 1]) <= 0) hi = mid; else lo = mid + 1;
  }
  return lo;
}

Rational PiecewisePolynomial::operator()(const Rational& p) const { return pieces_[piece_index(p)](p); }

bool PiecewisePolynomial::is_continuous() const {
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
    if (breakpoints_[i + 1].sign_of(pieces_[i] - pieces_[i + 1]) != 0) return false;
  return true;
}

PiecewisePolynomial assemble_piecewise(int n, int k, const std::vector<RealizableBasis>& realizable) {
  if (realizable.empty()) throw TilingError("no realizable basis for n=" + std::to_string(n) + ", k=" + std::to_string(k));
  std::vector<const RealizableBasis*> order;
  for (const auto& r : realizable) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const RealizableBasis* a, const RealizableBasis* b) { return a->interval.lo < b->interval.lo; });

  auto describe = [](const RealizableBasis& r) {
    return r.basis.to_string() + " on [" + r.interval.lo.to_string() + ", " + r.interval.hi.to_string() + "]";
  };
  if (!(order.front()->interval.lo == ExactReal(0)))
    throw TilingError("intervals do not start at 0: " + describe(*order.front()));
  if (!(order.back()->interval.hi == ExactReal(1)))
    throw TilingError("intervals do not end at 1: " + describe(*order.back()));

  std::vector<ExactReal> breaks{ExactReal(0)};
  std::vector<Polynomial> pieces;
  std::vector<DualBasis> bases;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& r = *order[i];
    if (i + 1 < order.size()) {
      const auto& next = *order[i + 1];
      if (!(r.interval.hi == next.interval.lo))
        throw TilingError("gap or overlap between " + describe(r) + " and " + describe(next));
      ExactReal shared = r.interval.hi;
      if (!shared.is_rational() && !next.interval.lo.is_rational()) {
        Polynomial g = gcd(shared.algebraic().defining(), next.interval.lo.algebraic().defining());
        if (g.degree() < shared.algebraic().defining().degree()) shared = shared.algebraic().with_defining(g);
      }
      breaks.push_back(std::move(shared));
    } else {
      breaks.emplace_back(1);
    }
    pieces.push_back(r.functions.v_of(n));
    bases.push_back(r.basis);
  }
  return PiecewisePolynomial(n, k, std::move(breaks), std::move(pieces), std::move(bases));
}

PiecewisePolynomial piecewise(int n, int k, unsigned jobs) {
  return assemble_piecewise(n, k, realizable_bases(n, k, jobs));
}

bool same_function(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
  std::vector<ExactReal> pts = a.breakpoints();
  pts.insert(pts.end(), b.breakpoints().begin(), b.breakpoints().end());
  pts = merge_points(std::move(pts));
  for (std::size_t c = 0; c + 1 < pts.size(); ++c) {
    Rational s = rational_between(pts[c], pts[c + 1]);
    if (!(a.pieces()[a.piece_index(s)] == b.pieces()[b.piece_index(s)])) return false;
  }
  return true;
}

}  // namespace kwise
