#include "kwise/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "kwise/serialize.hpp"

namespace kwise {

namespace {

struct Options {
  int n = 0;
  int k = 0;
  std::string p;
  bool oracle = false;
  bool json = false;
  bool csv = false;
  std::string plot_step;
  std::vector<std::string> theorems{"all"};
  std::string n_range;
  std::vector<int> tables;
  bool conjectures = false;
  bool correlation = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

void require_piecewise_domain(int n, int k) {
  if (k < 2 || k > n - 1)
    throw ParameterError("requires 2 <= k <= n-1 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      int a = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {a, a};
    }
    std::string lhs = s.substr(0, dots), rhs = s.substr(dots + 2);
    int a = std::stoi(lhs, &used);
    if (used != lhs.size()) throw std::invalid_argument(s);
    int b = std::stoi(rhs, &used);
    if (used != rhs.size()) throw std::invalid_argument(s);
    if (a > b) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw ParameterError("bad --n-range '" + s + "' (expected A..B)");
  }
}

/// Sub-ranges of [lo, hi] cut at multiples of 100.
std::vector<std::pair<int, int>> hundred_buckets(int lo, int hi) {
  std::vector<std::pair<int, int>> out;
  for (int a = lo; a <= hi;) {
    int b = std::min(hi, ((a - 1) / 100 + 1) * 100);
    out.emplace_back(a, b);
    a = b + 1;
  }
  return out;
}

// eval ------------------------------------------------------------------------

int cmd_eval(const Options& o, std::ostream& out) {
  Rational p = parse_rational(o.p);
  Rational value = m_value(o.n, o.k, p, o.oracle ? EvalMode::checked : EvalMode::piecewise);
  if (o.json) {
    Json params{{"n", o.n}, {"k", o.k}, {"p", to_json(p)}, {"oracle", o.oracle}};
    Json result{{"value", to_json(value)}, {"decimal", to_decimal(value, kDefaultDigits)}};
    if (o.oracle) result["oracle"] = "agrees";
    Json exactness{{"value", "exact-rational"}, {"decimal", "decimal-approx"}};
    out << envelope("eval", params, result, exactness).dump(2) << '\n';
    return kExitOk;
  }
  out << "M(" << o.n << "," << o.k << "," << to_string(p) << ") = " << to_string(value) << '\n';
  out << "decimal: " << to_decimal(value, kDefaultDigits) << '\n';
  if (o.oracle) out << "oracle: simplex agrees\n";
  return kExitOk;
}

// piecewise -------------------------------------------------------------------

std::vector<std::pair<Rational, Rational>> samples(const PiecewisePolynomial& m, const Rational& step) {
  if (step <= 0 || step > 1) throw ParameterError("--plot-data step must lie in (0, 1]");
  std::vector<std::pair<Rational, Rational>> out;
  Rational p = 0;
  for (; p < 1; p += step) out.emplace_back(p, m(p));
  out.emplace_back(Rational(1), m(Rational(1)));
  return out;
}

int cmd_piecewise(const Options& o, std::ostream& out) {
  require_piecewise_domain(o.n, o.k);
  if (o.json && o.csv) throw ParameterError("--json and --csv are exclusive");
  PiecewisePolynomial m = piecewise(o.n, o.k, o.jobs);
  std::optional<std::vector<std::pair<Rational, Rational>>> plot;
  if (!o.plot_step.empty()) plot = samples(m, parse_rational(o.plot_step));

  if (o.json) {
    Json params{{"n", o.n}, {"k", o.k}};
    Json result = to_json(m);
    bool algebraic = std::any_of(m.breakpoints().begin(), m.breakpoints().end(),
                                 [](const ExactReal& x) { return !x.is_rational(); });
    Json exactness{{"breakpoints", algebraic ? "algebraic" : "exact-rational"},
                   {"coefficients", "exact-rational"},
                   {"lo_decimal", "decimal-approx"},
                   {"hi_decimal", "decimal-approx"},
                   {"length", "decimal-approx"}};
    if (plot) {
      params["plot_step"] = to_json(parse_rational(o.plot_step));
      Json pts = Json::array();
      for (const auto& [p, v] : *plot)
        pts.push_back(Json{{"p", to_json(p)}, {"M", to_json(v)}, {"M_decimal", to_decimal(v, kDefaultDigits)}});
      result["samples"] = pts;
      exactness["samples"] = "exact-rational";
      exactness["M_decimal"] = "decimal-approx";
    }
    out << envelope("piecewise", params, result, exactness).dump(2) << '\n';
    return kExitOk;
  }
  if (plot) {
    out << "p,M,M_decimal\n";
    for (const auto& [p, v] : *plot) out << to_string(p) << ',' << to_string(v) << ',' << to_decimal(v, kDefaultDigits) << '\n';
    return kExitOk;
  }
  if (o.csv) {
    out << "i,basis,left,right,left_decimal,right_decimal,polynomial\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto iv = m.interval(i);
      out << i + 1 << ",\"" << m.bases()[i].to_string() << "\",\"" << exact_string(iv.lo) << "\",\""
          << exact_string(iv.hi) << "\"," << iv.lo.decimal() << ',' << iv.hi.decimal() << ",\""
          << m.pieces()[i].to_string() << "\"\n";
    }
    return kExitOk;
  }
  out << "M(" << o.n << "," << o.k << ",p): " << m.size() << " pieces\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto iv = m.interval(i);
    out << std::setw(3) << i + 1 << "  [" << iv.lo.to_string() << ", " << iv.hi.to_string() << "]  "
        << m.bases()[i].to_string() << "  " << m.pieces()[i].to_string() << '\n';
  }
  return kExitOk;
}

// verify ----------------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out) {
  require_piecewise_domain(o.n, o.k);
  std::set<std::string> which(o.theorems.begin(), o.theorems.end());
  auto checks = verify_theorems(piecewise(o.n, o.k, o.jobs), which);
  bool failed = std::any_of(checks.begin(), checks.end(), [](const TheoremCheck& c) { return c.verdict == Verdict::fail; });
  if (o.json) {
    Json params{{"n", o.n}, {"k", o.k}, {"theorems", o.theorems}};
    Json list = Json::array();
    for (const auto& c : checks) list.push_back(to_json(c));
    out << envelope("verify", params, Json{{"checks", list}, {"all_pass", !failed}}, Json::object()).dump(2) << '\n';
  } else {
    for (const auto& c : checks) {
      out << "theorem " << c.id << ": " << to_string(c.verdict);
      if (!c.description.empty()) out << "  " << c.description;
      if (!c.detail.empty()) out << "  [" << c.detail << "]";
      out << '\n';
    }
  }
  return failed ? kExitValidatorFailure : kExitOk;
}

// study -----------------------------------------------------------------------

int cmd_study(const Options& o, std::ostream& out) {
  auto [lo, hi] = parse_range(o.n_range);
  for (int t : o.tables)
    if (t < 1 || t > 5) throw ParameterError("--tables takes values 1..5");
  std::set<int> tables(o.tables.begin(), o.tables.end());
  const bool even = o.k % 2 == 0;
  if (!even && (tables.count(2) || tables.count(4) || tables.count(5) || o.correlation))
    throw ParameterError("spread, correlation and exceptional-pair tables require even k");
  if (tables.count(4) && o.k < 4) throw ParameterError("spread table requires k >= 4");

  auto reports = study_range(o.k, lo, hi, o.jobs);
  std::optional<SpreadStats> spreads;
  if (even && o.k >= 4) spreads = spread_table(reports);
  auto pairs = exceptional_pair_stats(reports, hundred_buckets(lo, hi));

  if (o.json) {
    Json params{{"k", o.k}, {"n_range", Json::array({lo, hi})}, {"tables", o.tables},
                {"conjectures", o.conjectures}, {"correlation", o.correlation}};
    Json list = Json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    Json result{{"reports", list}};
    if (spreads) {
      result["spread"] = to_json(*spreads);
      result["conjecture_7"] = to_json(msp_monotone(*spreads));
    }
    Json pj = Json::array();
    for (const auto& c : pairs) pj.push_back(Json{{"n_from", c.lo}, {"n_to", c.hi}, {"count", c.count}, {"ns", c.ns}});
    result["exceptional_pairs"] = pj;
    Json exactness{{"interval", "algebraic"},
                   {"exceptional_points", "algebraic"},
                   {"transitions.at", "algebraic"},
                   {"length", "decimal-approx"},
                   {"lo_decimal", "decimal-approx"},
                   {"hi_decimal", "decimal-approx"},
                   {"correlation", "decimal-approx"}};
    out << envelope("study", params, result, exactness).dump(2) << '\n';
    return kExitOk;
  }

  for (const auto& r : reports) {
    out << "n=" << r.n << " k=" << r.k << ": N=" << r.realizable.size() << ", exceptional points: ";
    if (r.exceptional_points.empty()) out << "none";
    for (std::size_t i = 0; i < r.exceptional_points.size(); ++i)
      out << (i ? " " : "") << exact_string(r.exceptional_points[i]);
    if (r.msp) out << ", Msp=" << *r.msp;
    if (o.correlation) {
      out << ", correlation=";
      if (r.correlation) out << std::fixed << std::setprecision(kLengthDigits) << *r.correlation << std::defaultfloat;
      else out << "undefined";
    }
    out << '\n';
    if (o.conjectures) {
      for (const auto& c : r.conjectures) {
        out << "  conjecture " << c.id << ": " << to_string(c.verdict);
        if (!c.witness.empty()) out << "  [" << c.witness << "]";
        out << '\n';
      }
      if (r.proposition_r.verdict != Verdict::not_applicable)
        out << "  realizable-count bound: " << to_string(r.proposition_r.verdict) << "  [" << r.proposition_r.detail
            << "]\n";
    }
  }
  if (o.conjectures && spreads) {
    auto c = msp_monotone(*spreads);
    out << "conjecture 7 over n=" << lo << ".." << hi << ": " << to_string(c.verdict);
    if (!c.witness.empty()) out << "  [" << c.witness << "]";
    out << '\n';
  }
  for (int t : tables) {
    out << "\n# table " << t << '\n';
    switch (t) {
      case 1:
        for (const auto& r : reports) {
          if (reports.size() > 1) out << "# n=" << r.n << '\n';
          out << table1_csv(r);
        }
        break;
      case 2: out << table2_csv(o.k, pairs); break;
      case 3: out << table3_csv(reports); break;
      case 4: out << table4_csv(*spreads); break;
      case 5: out << table5_csv(reports); break;
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact maximum probability that n k-wise independent mean-p bits are all 1", "kwise"};
  app.set_config("--config", "", "read options from a TOML/INI file mirroring the flags");
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "M(n,k,p) at a rational p");
  eval->add_option("--n", o.n, "number of bits")->required();
  eval->add_option("--k", o.k, "independence level")->required();
  eval->add_option("--p", o.p, "probability, as a/b or a decimal")->required();
  eval->add_flag("--oracle", o.oracle, "also run the exact simplex and require agreement");
  eval->add_flag("--json", o.json, "JSON envelope output");

  auto* pw = app.add_subcommand("piecewise", "M(n,k,.) as a piecewise polynomial on [0,1]");
  pw->add_option("--n", o.n)->required();
  pw->add_option("--k", o.k)->required();
  pw->add_flag("--json", o.json);
  pw->add_flag("--csv", o.csv);
  pw->add_option("--plot-data", o.plot_step, "emit (p, M) samples at this step");
  pw->add_option("--jobs", o.jobs, "worker threads");

  auto* ver = app.add_subcommand("verify", "check the closed-form theorems against the synthesized function");
  ver->add_option("--n", o.n)->required();
  ver->add_option("--k", o.k)->required();
  ver->add_option("--theorems", o.theorems, "all|3|4|5|6|7|props|odd-reduction")->delimiter(',');
  ver->add_flag("--json", o.json);
  ver->add_option("--jobs", o.jobs, "worker threads");

  auto* st = app.add_subcommand("study", "realizable bases, exceptional points, spreads and tables over a range of n");
  st->add_option("--k", o.k)->required();
  st->add_option("--n-range", o.n_range, "A..B")->required();
  st->add_option("--tables", o.tables, "tables to emit (1-5)")->delimiter(',');
  st->add_flag("--conjectures", o.conjectures, "print conjecture verdicts with witnesses");
  st->add_flag("--correlation", o.correlation, "print spread/length correlations");
  st->add_option("--jobs", o.jobs, "worker threads");
  st->add_flag("--json", o.json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (o.jobs == 0) throw ParameterError("--jobs must be positive");
    if (*eval) return cmd_eval(o, out);
    if (*pw) return cmd_piecewise(o, out);
    if (*ver) return cmd_verify(o, out);
    return cmd_study(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormulaDomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OracleMismatch& e) {
    err << "oracle mismatch: " << e.what() << '\n';
    return kExitOracleMismatch;
  } catch (const TilingError& e) {
    err << "tiling error: " << e.what() << '\n';
    return kExitTiling;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace kwise
