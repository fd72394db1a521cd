#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "kwise/bonferroni.hpp"
#include "kwise/solver.hpp"

using namespace kwise;
using kwise::testing::q;

namespace {

const std::vector<Rational>& probe_points() {
  static const std::vector<Rational> pts{q(1, 7), q(1, 3), q(1, 2), q(2, 3), q(9, 10)};
  return pts;
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("values at worked points") {
    CHECK(m_value(10, 4, q(1, 10)) == q(1, 10000));
    CHECK(m_value(4, 4, q(1, 3)) == q(1, 81));
    CHECK(m_value(4, 4, q(1, 3), EvalMode::checked) == q(1, 81));
    CHECK(m_value(7, 1, q(2, 5)) == q(2, 5));
    CHECK(m_value(10, 2, 1) == 1);
    CHECK(m_value(10, 2, 0) == 0);
    CHECK(m_value(5, 2, q(1, 4), EvalMode::oracle) == q(1, 16));
    CHECK(m_value(11, 6, q(3, 10), EvalMode::checked) == q(3573, 10000000));
  }

  TEST_CASE("parameter errors") {
    CHECK_THROWS_AS(m_value(3, 4, q(1, 2)), ParameterError);
    CHECK_THROWS_AS(m_value(5, 0, q(1, 2)), ParameterError);
    CHECK_THROWS_AS(m_value(5, 2, q(-1, 2)), ParameterError);
    CHECK_THROWS_AS(m_value(5, 2, q(3, 2)), ParameterError);
    CHECK_THROWS_AS(verify_odd_reduction(10, 3), ParameterError);
    CHECK_THROWS_AS(verify_theorems(10, 4, {"9"}), ParameterError);
    CHECK_THROWS_AS(verify_theorems(10, 3, {"5"}), ParameterError);
    CHECK_THROWS_AS(verify_theorems(10, 9, {"6"}), ParameterError);
    CHECK_THROWS_AS(verify_theorems(10, 10, {"all"}), ParameterError);
  }

  TEST_CASE("k = 2 pieces follow the complete formula") {
    auto m = piecewise(10, 2);
    REQUIRE(m.size() == 9);
    auto catalog = k2_catalog(10);
    for (std::size_t j = 0; j < m.size(); ++j) {
      CHECK(m.pieces()[j] == catalog[j].poly);
      CHECK(m.interval(j).lo == ExactReal(q(static_cast<long>(j), 9)));
      CHECK(m.interval(j).hi == ExactReal(q(static_cast<long>(j) + 1, 9)));
      CHECK(m.bases()[j].indices() == std::vector<int>{static_cast<int>(j), static_cast<int>(j) + 1, 10});
    }
    for (int n = 3; n <= 12; ++n) CHECK(piecewise(n, 2).size() == static_cast<std::size_t>(n - 1));
  }

  TEST_CASE("(10,4) synthesis") {
    auto m = piecewise(10, 4);
    CHECK(m.size() == 12);
    CHECK(m.is_continuous());
    CHECK(m.pieces().front() == x_pow(4));
    CHECK(m.breakpoints()[1] == ExactReal(q(1, 7)));
    CHECK(m.breakpoints()[2].decimal() == second_breakpoint(10, 4).decimal());
    CHECK(m.pieces().back() == bonferroni_poly(10, 4).compose_one_minus());
    CHECK(m.breakpoints()[6] == ExactReal(q(1, 2)));
  }

  TEST_CASE("(11,6) synthesis") {
    auto m = piecewise(11, 6);
    CHECK(m.is_continuous());
    CHECK(m.breakpoints()[1] == ExactReal(q(1, 6)));
    CHECK(m.breakpoints()[2].decimal() == "0.263379340617");
    CHECK(m.breakpoints()[3].decimal() == "0.294368794161");
    CHECK(m.breakpoints()[4].decimal() == "0.315013299632");
    CHECK(m(q(3, 10)) == q(3573, 10000000));
  }

  TEST_CASE("second breakpoints") {
    CHECK(second_breakpoint(10, 2) == ExactReal(q(2, 9)));
    CHECK(second_breakpoint(10, 3) == ExactReal(q(2, 8)));
    CHECK(second_breakpoint(11, 6).decimal() == "0.263379340617");
    auto p2 = second_breakpoint(10, 4);
    CHECK(ExactReal(q(1, 7)) < p2);
    CHECK(p2 < ExactReal(q(2, 7)));
    CHECK(p2.sign_of(second_breakpoint_cubic(10, 4)) == 0);
    CHECK(second_to_last_breakpoint(10, 2) == ExactReal(q(7, 9)));
    CHECK(second_to_last_breakpoint(10, 4) == second_breakpoint(10, 4).one_minus());
    CHECK_THROWS_AS(second_to_last_breakpoint(10, 3), FormulaDomainError);
    CHECK_THROWS_AS(last_interval_form(9, 5), FormulaDomainError);
    CHECK_THROWS_AS(second_interval_form(10, 9), FormulaDomainError);
  }

  TEST_CASE("closed forms agree with the synthesis") {
    for (int n = 4; n <= 12; ++n)
      for (int k = 2; k <= n - 1; ++k) {
        auto m = piecewise(n, k);
        auto cat = closed_forms(n, k);
        CHECK(m.pieces().front() == cat.first.poly);
        if (cat.second) CHECK(m.pieces()[1] == cat.second->poly);
        if (cat.last) CHECK(m.pieces().back() == cat.last->poly);
        if (cat.second_to_last) CHECK(m.pieces()[m.size() - 2] == cat.second_to_last->poly);
      }
  }

  TEST_CASE("optimizing distributions") {
    auto r = optimizing_distribution(10, 4, q(1, 10));
    CHECK(r.distribution.satisfies_constraints());
    CHECK(r.distribution.v[10] == q(1, 10000));
    REQUIRE(r.basis);
    CHECK(r.basis->indices() == std::vector<int>{0, 1, 2, 3, 10});
    CHECK(r.closed_forms_match);
    CHECK_FALSE(r.closed_forms_checked.empty());

    auto t = optimizing_distribution(4, 4, q(1, 3));
    CHECK_FALSE(t.basis);
    CHECK(t.distribution.v[4] == q(1, 81));

    for (int n = 4; n <= 10; ++n)
      for (int k = 2; k <= n - 1; ++k)
        for (const auto& p : probe_points()) {
          auto d = optimizing_distribution(n, k, p);
          CHECK(d.distribution.satisfies_constraints());
          CHECK(d.distribution.v[static_cast<std::size_t>(n)] == m_value(n, k, p));
          CHECK(d.closed_forms_match);
        }
  }

  TEST_CASE("upper bounds") {
    auto r = verify_upper_bounds(10, 4, q(1, 10));
    CHECK(r.all_hold());
    CHECK(r.checks.size() == 4);
    CHECK(r.checks[0].label == "m=0");
    CHECK(r.checks[0].tight);
    CHECK(r.checks.back().label == "B(n,k,1-p)");

    auto s = verify_upper_bounds(11, 6, q(3, 10));
    CHECK(s.all_hold());
    for (const auto& c : s.checks) CHECK_FALSE(c.tight);
    CHECK(upper_bound_poly(11, 6, 6) ==
          Rational(q(1, 210)) * bonferroni_poly(11, 6));

    auto last = verify_upper_bounds(10, 4, q(19, 20));
    CHECK(last.checks.back().tight);

    for (int n = 4; n <= 11; ++n)
      for (int k = 2; k <= n - 1; ++k)
        for (const auto& p : probe_points()) CHECK(verify_upper_bounds(n, k, p).all_hold());
  }

  TEST_CASE("odd reduction") {
    for (int n = 4; n <= 12; ++n)
      for (int k = 2; k <= n - 2; k += 2) {
        INFO("n=" << n << " k=" << k);
        CHECK(verify_odd_reduction(n, k));
        for (const auto& p : probe_points()) CHECK(m_value(n, k + 1, p) == p * m_value(n - 1, k, p));
      }
  }

  TEST_CASE("synthesis, oracle and basis scan agree") {
    for (int n = 3; n <= 12; ++n)
      for (int k = 2; k <= n - 1; ++k) {
        auto m = piecewise(n, k);
        for (const auto& p : probe_points()) {
          INFO("n=" << n << " k=" << k << " p=" << to_string(p));
          Rational v = m(p);
          CHECK(v == simplex_solve(n, k, p).value);
          CHECK(v == basis_scan_value(n, k, p));
        }
      }
  }

  TEST_CASE("random points against the oracle") {
    std::mt19937 rng(2024);
    for (int n = 3; n <= 12; ++n)
      for (int k = 2; k <= n - 1; ++k) {
        auto m = piecewise(n, k);
        for (int t = 0; t < 25; ++t) {
          Rational p = kwise::testing::random_unit(rng, 97);
          CHECK(m(p) == simplex_solve(n, k, p).value);
        }
      }
  }

  TEST_CASE("theorem validators pass for n <= 12") {
    for (int n = 3; n <= 12; ++n)
      for (int k = 2; k <= n - 1; ++k)
        for (const auto& c : verify_theorems(n, k, {"all"})) {
          INFO("n=" << n << " k=" << k << " group " << c.id << ": " << c.detail);
          CHECK(c.verdict != Verdict::fail);
        }
    auto only = verify_theorems(10, 4, {"6"});
    REQUIRE(only.size() == 1);
    CHECK(only[0].verdict == Verdict::pass);
    auto all = verify_theorems(9, 3, {"all"});
    CHECK(all.size() == theorem_ids().size());
  }

  TEST_CASE("shape properties of M") {
    for (int n = 3; n <= 10; ++n)
      for (int k = 2; k <= n - 1; ++k) {
        auto m = piecewise(n, k);
        CHECK(m.is_continuous());
        CHECK(m(0) == 0);
        CHECK(m(1) == 1);
        for (int i = 0; i <= 40; ++i) {
          Rational p = q(i, 40);
          Rational v = m(p);
          CHECK(v >= 0);
          CHECK(pow(p, static_cast<unsigned>(n)) <= v);
          CHECK(v <= pow(p, static_cast<unsigned>(k)));
          if (i > 0) CHECK(m(q(i - 1, 40)) <= v);
        }
      }
  }

  TEST_CASE("the second-to-last polynomial dominates M everywhere") {
    // Certified opposite of the claim that it fails to be an upper bound.
    for (int n = 4; n <= 12; ++n)
      for (int k = 2; k <= n - 2; k += 2) {
        auto m = piecewise(n, k);
        Polynomial g = second_to_last_interval_form(n, k).poly;
        CHECK(isolate_roots(g, 0, 1).empty());
        CHECK(g(q(1, 2)) > 0);
        for (std::size_t i = 0; i < m.size(); ++i) {
          Polynomial diff = g - m.pieces()[i];
          auto iv = m.interval(i);
          Rational mid = rational_between(iv.lo, iv.hi);
          CHECK(diff(mid) >= 0);
          if (diff.is_zero()) continue;
          for (const auto& r : isolate_roots(diff, iv.lo.lower(), iv.hi.upper()))
            if (iv.lo < r && r < iv.hi) CHECK(r.sign_of(diff.derivative()) == 0);
        }
      }
  }

  TEST_CASE("tiling failures are reported") {
    auto bases = realizable_bases(10, 4);
    REQUIRE(bases.size() == 12);
    CHECK_NOTHROW(assemble_piecewise(10, 4, bases));
    auto gap = bases;
    gap.erase(gap.begin() + 3);
    CHECK_THROWS_AS(assemble_piecewise(10, 4, gap), TilingError);
    auto head = bases;
    head.erase(head.begin());
    CHECK_THROWS_AS(assemble_piecewise(10, 4, head), TilingError);
    CHECK_THROWS_AS(assemble_piecewise(10, 4, {}), TilingError);

    FeasibilityFunctions split;
    split.indices = {0};
    Polynomial two_humps = Polynomial{-q(1, 4), Rational(1)} * Polynomial{-q(3, 4), Rational(1)};
    split.w = {two_humps};
    split.v = {two_humps};
    CHECK_THROWS_AS(feasibility_interval(split), NonIntervalFeasibility);

    FeasibilityFunctions one;
    one.indices = {0};
    one.w = one.v = {Polynomial{-q(1, 4), Rational(1)}};
    auto iv = feasibility_interval(one);
    REQUIRE(iv);
    CHECK(iv->lo == ExactReal(q(1, 4)));
    CHECK(iv->hi == ExactReal(1));

    FeasibilityFunctions none;
    none.indices = {0};
    none.w = none.v = {Polynomial::constant(-1)};
    CHECK_FALSE(feasibility_interval(none));
  }
}
