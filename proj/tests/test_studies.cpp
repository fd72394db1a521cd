#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "kwise/studies.hpp"

using namespace kwise;
using kwise::testing::q;

namespace {

const ConjectureResult& conjecture(const StudyReport& r, const std::string& id) {
  auto it = std::find_if(r.conjectures.begin(), r.conjectures.end(), [&](const auto& c) { return c.id == id; });
  REQUIRE(it != r.conjectures.end());
  return *it;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_SUITE("studies") {
  TEST_CASE("(10,4) report") {
    auto r = study(10, 4);
    REQUIRE(r.realizable.size() == 12);
    std::vector<std::string> lengths;
    for (const auto& e : r.realizable) lengths.push_back(e.interval.length_decimal(3));
    CHECK(lengths == std::vector<std::string>{"0.143", "0.090", "0.022", "0.117", "0.004", "0.124", "0.124",
                                              "0.004", "0.117", "0.022", "0.090", "0.143"});
    CHECK(r.realizable.front().interval.hi == ExactReal(q(1, 7)));
    CHECK(r.realizable.back().interval.lo == ExactReal(q(6, 7)));
    CHECK(r.realizable[5].interval.hi == ExactReal(q(1, 2)));
    CHECK(r.realizable[5].length == "0.123567227925");
    REQUIRE(r.exceptional_points.size() == 1);
    CHECK(r.exceptional_points[0] == ExactReal(q(1, 2)));
    REQUIRE(r.transitions.size() == 11);
    const auto& x = r.transitions[5];
    CHECK(x.exceptional());
    CHECK(x.leaving == std::vector<int>{2, 5});
    CHECK(x.entering == std::vector<int>{4, 7});
    for (std::size_t i = 0; i < r.transitions.size(); ++i)
      if (i != 5) CHECK(r.transitions[i].leaving.size() == 1);
    CHECK(r.proposition_r.verdict == Verdict::pass);
    CHECK(r.proposition_r.count == 12);
    CHECK(r.proposition_r.bound == 13);
    REQUIRE(r.correlation);
    CHECK(*r.correlation == doctest::Approx(0.516858049517).epsilon(1e-9));
    REQUIRE(r.msp);
    CHECK(*r.msp == 4);
  }

  TEST_CASE("(6,4) has one basis per unit of the bound") {
    auto r = study(6, 4);
    CHECK(r.realizable.size() == 5);
    CHECK(r.exceptional_points.empty());
    CHECK(r.proposition_r.verdict == Verdict::pass);
    CHECK(r.proposition_r.count == r.proposition_r.bound);
  }

  TEST_CASE("conjectures 1 to 6 hold on small cases") {
    for (int n : {8, 10, 11, 12}) {
      auto r = study(n, 4);
      for (const char* id : {"1", "2", "3", "4", "5", "6", "8", "third-from-last"}) {
        INFO("n=" << n << " conjecture " << id << ": " << conjecture(r, id).witness);
        CHECK(conjecture(r, id).verdict == Verdict::pass);
      }
    }
    auto odd = study(9, 3);
    CHECK(conjecture(odd, "5").verdict == Verdict::not_applicable);
    CHECK_FALSE(odd.correlation);
    CHECK(odd.spreads.empty());
  }

  TEST_CASE("exceptional points, k = 4") {
    auto reports = study_range(4, 6, 12, 2);
    REQUIRE(reports.size() == 7);
    for (const auto& r : reports) {
      INFO("n=" << r.n);
      if (r.n == 10) {
        CHECK(r.exceptional_points == std::vector<ExactReal>{ExactReal(q(1, 2))});
      } else if (r.n == 11) {
        CHECK(r.exceptional_points == std::vector<ExactReal>{ExactReal(q(1, 3)), ExactReal(q(2, 3))});
      } else {
        CHECK(r.exceptional_points.empty());
      }
      for (const auto& p : r.exceptional_points) CHECK(p.is_rational());
    }
    auto pairs = exceptional_pair_stats(reports, {{6, 12}});
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].count == 2);
    CHECK(pairs[0].ns == std::vector<int>{10, 11});
  }

  TEST_CASE("exceptional points, k = 6 and k = 8") {
    auto six = exceptional_pair_stats(6, {{8, 12}, {21, 24}}, 2);
    CHECK(six[0].count == 0);
    CHECK(six[1].ns == std::vector<int>{23});
    auto eight = exceptional_pair_stats(8, {{10, 20}}, 2);
    CHECK(eight[0].count == 0);
  }

  TEST_CASE("maximum spread") {
    auto stats = spread_table(4, 6, 20, 2);
    REQUIRE(stats.rows.size() == 15);
    for (const auto& row : stats.rows) {
      REQUIRE(row.predicted);
      CHECK(row.msp == *row.predicted);
      CHECK(row.msp == predicted_msp_k4(row.n));
    }
    CHECK(msp_monotone(stats).verdict == Verdict::pass);
    CHECK(predicted_msp_k4(10) == 4);
    CHECK(predicted_msp_k4(11) == 5);
    CHECK(predicted_msp_k4(18) == 6);

    auto r = study(12, 10);
    for (int s : r.spreads) {
      CHECK(s >= 9);
      CHECK(s <= 10);
    }
  }

  TEST_CASE("end intervals have minimal spread and equal length") {
    for (int n = 6; n <= 12; ++n)
      for (int k = 2; k <= n - 2; k += 2) {
        auto r = study(n, k);
        INFO("n=" << n << " k=" << k);
        CHECK(r.spreads.front() == k - 1);
        CHECK(r.spreads.back() == k - 1);
        CHECK(*std::min_element(r.spreads.begin(), r.spreads.end()) == k - 1);
        Rational len = q(1, n - k + 1);
        CHECK(r.realizable.front().interval.hi == ExactReal(len));
        CHECK(r.realizable.back().interval.lo == ExactReal(1 - len));
      }
  }

  TEST_CASE("correlation is undefined for constant spreads") {
    StudyReport r;
    r.k = 4;
    r.n = 8;
    DualBasis b(8, 4, {0, 1, 3, 4, 8});
    for (int i = 0; i < 3; ++i) r.realizable.push_back({b, ExactInterval{}, "0.1", 3});
    r.spreads = {3, 3, 3};
    CHECK_FALSE(correlation(r));
    r.realizable.erase(r.realizable.begin() + 1, r.realizable.end());
    r.spreads.resize(1);
    CHECK_THROWS(correlation(r));
  }

  TEST_CASE("realizable count bound") {
    for (int n : {6, 9, 10}) {
      auto r = study(n, 2);
      CHECK(proposition_r_check(r).verdict == Verdict::pass);
      CHECK(r.proposition_r.count == n - 1);
    }
    auto r = study(10, 4);
    CHECK(proposition_r_check(r).verdict == Verdict::pass);
  }

  TEST_CASE("CSV tables") {
    auto r = study(10, 4);
    auto t1 = table1_csv(r);
    CHECK(first_line(t1) == "i,basis,left,right,left_decimal,right_decimal,length");
    CHECK(std::count(t1.begin(), t1.end(), '\n') == 13);
    CHECK(t1.find("1/7") != std::string::npos);
    auto reports = study_range(4, 6, 12);
    CHECK(first_line(table2_csv(4, exceptional_pair_stats(reports, {{6, 12}}))) == "k,n_from,n_to,exceptional_pairs");
    auto t3 = table3_csv(reports);
    CHECK(first_line(t3) == "n,exceptional_points");
    CHECK(t3.find("11,1/3 2/3") != std::string::npos);
    auto t4 = table4_csv(spread_table(reports));
    CHECK(first_line(t4) == "k,msp,n_from,n_to,formula_holds");
    CHECK(t4.find("4,4,6,10,yes") != std::string::npos);
    CHECK(first_line(table5_csv(reports)) == "n,k,N,correlation");
    CHECK(exact_string(ExactReal(q(1, 2))) == "1/2");
    CHECK(exact_string(second_breakpoint(10, 4)).rfind("root(", 0) == 0);
  }
}
