#include "kwise/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

namespace kwise {

namespace {

std::string join(const std::vector<int>& xs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << '}';
  return os.str();
}

ConjectureResult verdict(std::string id, std::string statement, std::optional<std::string> counterexample,
                         std::string note = {}) {
  ConjectureResult r{std::move(id), std::move(statement), Verdict::pass, std::move(note)};
  if (counterexample) {
    r.verdict = Verdict::fail;
    r.witness = std::move(*counterexample);
  }
  return r;
}

ConjectureResult skipped(std::string id, std::string statement, std::string why) {
  return ConjectureResult{std::move(id), std::move(statement), Verdict::not_applicable, std::move(why)};
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

// ---------------------------------------------------------------------------

StudyReport study(int n, int k) {
  if (k < 2 || k > n - 1) throw ParameterError("study requires 2 <= k <= n-1");
  return study(piecewise(n, k));
}

StudyReport study(const PiecewisePolynomial& m) {
  StudyReport r;
  r.n = m.n();
  r.k = m.k();
  const bool even = r.k % 2 == 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    StudyEntry e{m.bases()[i], m.interval(i), m.interval(i).length_decimal(kLengthDigits), std::nullopt};
    if (even) {
      e.spread = e.basis.spread();
      r.spreads.push_back(*e.spread);
    }
    r.realizable.push_back(std::move(e));
  }
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    const auto& a = m.bases()[i].indices();
    const auto& b = m.bases()[i + 1].indices();
    Transition t{m.breakpoints()[i + 1], {}, {}};
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(t.leaving));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(t.entering));
    if (t.exceptional()) r.exceptional_points.push_back(t.at);
    r.transitions.push_back(std::move(t));
  }
  if (!r.spreads.empty()) r.msp = *std::max_element(r.spreads.begin(), r.spreads.end());
  r.conjectures = check_conjectures(r, m);
  if (even && r.realizable.size() >= 2) r.correlation = correlation(r);
  r.proposition_r = proposition_r_check(r);
  return r;
}

std::vector<ConjectureResult> check_conjectures(const StudyReport& r, const PiecewisePolynomial& m) {
  std::vector<ConjectureResult> out;
  const std::size_t N = r.realizable.size();
  const bool even = r.k % 2 == 0;

  {
    std::optional<std::string> bad;
    for (std::size_t i = 0; i + 1 < N && !bad; ++i)
      if (!(r.realizable[i].basis < r.realizable[i + 1].basis))
        bad = "I_" + std::to_string(i + 1) + " = " + r.realizable[i].basis.to_string() + " is not before I_" +
              std::to_string(i + 2) + " = " + r.realizable[i + 1].basis.to_string() + " lexicographically";
    out.push_back(verdict("1", "interval order agrees with lexicographic basis order", bad));
  }

  {
    std::optional<std::string> bad;
    for (const auto& t : r.transitions) {
      if (t.exceptional() || bad) continue;
      if (t.leaving.size() != 1 || t.entering.size() != 1 || t.entering[0] != t.leaving[0] + 2)
        bad = "at " + t.at.to_string() + ": " + join(t.leaving) + " leave, " + join(t.entering) + " enter";
    }
    out.push_back(verdict("2", "single changes replace a by a+2", bad));
  }

  {
    std::optional<std::string> bad;
    std::size_t seen = 0;
    for (const auto& t : r.transitions) {
      if (!t.exceptional() || bad) continue;
      ++seen;
      std::vector<int> shifted;
      for (int a : t.leaving) shifted.push_back(a + 2);
      if (shifted != t.entering)
        bad = "at " + t.at.to_string() + ": " + join(t.leaving) + " leave, " + join(t.entering) + " enter";
    }
    out.push_back(verdict("3", "simultaneous changes replace each a by a+2", bad,
                          seen ? std::to_string(seen) + " simultaneous transition(s)" : "vacuous"));
  }

  {
    std::optional<std::string> bad;
    for (const auto& x : r.exceptional_points)
      if (!x.is_rational() && !bad) bad = "irrational exceptional point " + exact_string(x);
    out.push_back(verdict("4", "exceptional points are rational", bad,
                          r.exceptional_points.empty() ? "vacuous" : ""));
  }

  if (even) {
    std::optional<std::string> bad;
    for (std::size_t i = 0; i < N && !bad; ++i) {
      const auto& a = r.realizable[i];
      const auto& b = r.realizable[N - 1 - i];
      if (!(b.basis == a.basis.mirror()))
        bad = "mirror of I_" + std::to_string(i + 1) + " = " + a.basis.mirror().to_string() + " but I_" +
              std::to_string(N - i) + " = " + b.basis.to_string();
      else if (!(b.interval.lo == a.interval.hi.one_minus()) || !(b.interval.hi == a.interval.lo.one_minus()))
        bad = "L(I_" + std::to_string(N - i) + ") = [" + b.interval.lo.to_string() + ", " + b.interval.hi.to_string() +
              "] is not the reflection of L(I_" + std::to_string(i + 1) + ")";
    }
    out.push_back(verdict("5", "bases mirror under a -> n-1-a and intervals reflect about 1/2", bad));
  } else {
    out.push_back(skipped("5", "bases mirror under a -> n-1-a and intervals reflect about 1/2", "odd k"));
  }

  {
    std::optional<std::string> bad;
    for (const auto& d : r.exceptional_points) {
      ExactReal mirror = d.one_minus();
      bool found = std::any_of(r.exceptional_points.begin(), r.exceptional_points.end(),
                               [&](const ExactReal& e) { return e == mirror; });
      if (!found && !bad) bad = d.to_string() + " is exceptional but " + mirror.to_string() + " is not";
    }
    out.push_back(verdict("6", "1-d is exceptional whenever d is", bad, r.exceptional_points.empty() ? "vacuous" : ""));
  }

  out.push_back(skipped("7", "Msp(n,k) is non-decreasing in n", "needs a range of n"));

  if (r.k == 4) {
    int want = predicted_msp_k4(r.n);
    std::optional<std::string> bad;
    if (r.msp != want) bad = "Msp = " + std::to_string(*r.msp) + ", formula gives " + std::to_string(want);
    out.push_back(verdict("8", "Msp(n,4) = floor(sqrt(n-2)) + 2", bad, "Msp = " + std::to_string(want)));
  } else {
    out.push_back(skipped("8", "Msp(n,4) = floor(sqrt(n-2)) + 2", "k != 4"));
  }

  const std::string third = "third-from-last piece formula";
  if (even && r.k >= 4 && r.k <= r.n - 2 && N >= 3) {
    std::optional<std::string> bad;
    Polynomial want = third_from_last_conjecture(r.n, r.k);
    if (!(m.pieces()[N - 3] == want))
      bad = "piece " + std::to_string(N - 2) + " is " + m.pieces()[N - 3].to_string();
    else if (!(m.interval(N - 3).lo == m.interval(2).hi.one_minus()))
      bad = "left endpoint is not 1 - p_3";
    out.push_back(verdict("third-from-last", third, bad));
  } else {
    out.push_back(skipped("third-from-last", third, "needs even 4 <= k <= n-2"));
  }
  return out;
}

std::optional<double> correlation(const StudyReport& r) {
  if (r.k % 2 != 0) return std::nullopt;
  const std::size_t N = r.realizable.size();
  if (N < 2) throw std::invalid_argument("correlation needs at least two realizable bases");
  std::vector<long double> xs, ys;
  for (const auto& e : r.realizable) {
    xs.push_back(*e.spread);
    ys.push_back(std::stold(e.length));
  }
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < N; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= N;
  my /= N;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < N; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

PropositionCheck proposition_r_check(const StudyReport& r) {
  PropositionCheck c;
  c.count = static_cast<long>(r.realizable.size());
  if (r.k % 2 != 0 || r.k > r.n - 2) {
    c.detail = "needs even k <= n-2";
    return c;
  }
  c.bound = static_cast<long>(r.k) * (r.n - r.k) / 2 + 1;
  for (const auto& cj : r.conjectures)
    if ((cj.id == "2" || cj.id == "3") && cj.verdict == Verdict::fail) {
      c.detail = "conjecture " + cj.id + " fails here";
      return c;
    }
  bool none = r.exceptional_points.empty();
  bool ok = c.count <= c.bound && (c.count == c.bound) == none;
  c.verdict = ok ? Verdict::pass : Verdict::fail;
  c.detail = "N = " + std::to_string(c.count) + ", bound = " + std::to_string(c.bound) + ", " +
             std::to_string(r.exceptional_points.size()) + " exceptional point(s)";
  return c;
}

// ---------------------------------------------------------------------------

std::vector<StudyReport> study_range(int k, int lo, int hi, unsigned jobs) {
  if (lo > hi) throw ParameterError("empty n-range");
  if (k < 2 || k > lo - 1) throw ParameterError("study requires 2 <= k <= n-1 for every n in the range");
  std::vector<StudyReport> out(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(out.size(), jobs, [&](std::size_t i) { out[i] = study(lo + static_cast<int>(i), k); });
  return out;
}

int predicted_msp_k4(int n) {
  if (n < 2) throw ParameterError("predicted Msp needs n >= 2");
  int r = static_cast<int>(std::sqrt(static_cast<double>(n - 2)));
  while ((r + 1) * (r + 1) <= n - 2) ++r;
  while (r * r > n - 2) --r;
  return r + 2;
}

SpreadStats spread_table(const std::vector<StudyReport>& reports) {
  SpreadStats s;
  for (const auto& r : reports) {
    if (!r.msp) throw ParameterError("spread needs even k");
    s.k = r.k;
    SpreadRow row{r.n, *r.msp, std::nullopt};
    if (r.k == 4) row.predicted = predicted_msp_k4(r.n);
    s.rows.push_back(row);
  }
  return s;
}

SpreadStats spread_table(int k, int lo, int hi, unsigned jobs) {
  if (k % 2 != 0 || k < 4) throw ParameterError("spread table requires even k >= 4");
  return spread_table(study_range(k, lo, hi, jobs));
}

ConjectureResult msp_monotone(const SpreadStats& s) {
  std::optional<std::string> bad;
  for (std::size_t i = 0; i + 1 < s.rows.size() && !bad; ++i)
    if (s.rows[i + 1].msp < s.rows[i].msp)
      bad = "Msp(" + std::to_string(s.rows[i].n) + ") = " + std::to_string(s.rows[i].msp) + " > Msp(" +
            std::to_string(s.rows[i + 1].n) + ") = " + std::to_string(s.rows[i + 1].msp);
  if (s.rows.size() < 2) return skipped("7", "Msp(n,k) is non-decreasing in n", "needs at least two n");
  return verdict("7", "Msp(n,k) is non-decreasing in n", bad);
}

std::vector<ExceptionalPairCount> exceptional_pair_stats(const std::vector<StudyReport>& reports,
                                                         const std::vector<std::pair<int, int>>& ranges) {
  std::vector<ExceptionalPairCount> out;
  for (auto [lo, hi] : ranges) {
    ExceptionalPairCount c{lo, hi, 0, {}};
    for (const auto& r : reports)
      if (r.n >= lo && r.n <= hi && !r.exceptional_points.empty()) c.ns.push_back(r.n);
    c.count = static_cast<int>(c.ns.size());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ExceptionalPairCount> exceptional_pair_stats(int k, const std::vector<std::pair<int, int>>& ranges,
                                                         unsigned jobs) {
  if (k % 2 != 0) throw ParameterError("exceptional pair statistics require even k");
  if (ranges.empty()) return {};
  int lo = ranges.front().first, hi = ranges.front().second;
  for (auto [a, b] : ranges) {
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return exceptional_pair_stats(study_range(k, lo, hi, jobs), ranges);
}

// ---------------------------------------------------------------------------

std::string exact_string(const ExactReal& x) {
  if (x.is_rational()) return to_string(x.rational());
  const auto& a = x.algebraic();
  return "root(" + a.defining().to_string() + ";[" + to_string(a.lo()) + "," + to_string(a.hi()) + "])";
}

std::string table1_csv(const StudyReport& r, int digits) {
  std::ostringstream os;
  os << "i,basis,left,right,left_decimal,right_decimal,length\n";
  for (std::size_t i = 0; i < r.realizable.size(); ++i) {
    const auto& e = r.realizable[i];
    os << i + 1 << ',' << csv_field(e.basis.to_string()) << ',' << csv_field(exact_string(e.interval.lo)) << ','
       << csv_field(exact_string(e.interval.hi)) << ',' << e.interval.lo.decimal(kLengthDigits) << ','
       << e.interval.hi.decimal(kLengthDigits) << ',' << e.interval.length_decimal(digits) << '\n';
  }
  return os.str();
}

std::string table2_csv(int k, const std::vector<ExceptionalPairCount>& counts) {
  std::ostringstream os;
  os << "k,n_from,n_to,exceptional_pairs\n";
  for (const auto& c : counts) os << k << ',' << c.lo << ',' << c.hi << ',' << c.count << '\n';
  return os.str();
}

std::string table3_csv(const std::vector<StudyReport>& reports) {
  std::ostringstream os;
  os << "n,exceptional_points\n";
  for (const auto& r : reports) {
    if (r.exceptional_points.empty()) continue;
    std::string pts;
    for (const auto& x : r.exceptional_points) pts += (pts.empty() ? "" : " ") + exact_string(x);
    os << r.n << ',' << csv_field(pts) << '\n';
  }
  return os.str();
}

std::string table4_csv(const SpreadStats& s) {
  std::ostringstream os;
  os << "k,msp,n_from,n_to" << (s.k == 4 ? ",formula_holds" : "") << '\n';
  for (std::size_t i = 0; i < s.rows.size();) {
    std::size_t j = i;
    bool holds = true;
    while (j < s.rows.size() && s.rows[j].msp == s.rows[i].msp) {
      if (s.rows[j].predicted && *s.rows[j].predicted != s.rows[j].msp) holds = false;
      ++j;
    }
    os << s.k << ',' << s.rows[i].msp << ',' << s.rows[i].n << ',' << s.rows[j - 1].n;
    if (s.k == 4) os << ',' << (holds ? "yes" : "no");
    os << '\n';
    i = j;
  }
  return os.str();
}

std::string table5_csv(const std::vector<StudyReport>& reports) {
  std::ostringstream os;
  os << "n,k,N,correlation\n";
  for (const auto& r : reports) {
    os << r.n << ',' << r.k << ',' << r.realizable.size() << ',';
    if (r.correlation) os << std::fixed << std::setprecision(12) << *r.correlation << std::defaultfloat;
    else os << "undefined";
    os << '\n';
  }
  return os.str();
}

}  // namespace kwise
