#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kwise/solver.hpp"

namespace kwise {

/// Length decimals used for report payloads; tables round separately.
inline constexpr int kLengthDigits = 12;

struct StudyEntry {
  DualBasis basis;
  ExactInterval interval;
  std::string length;          ///< |L(I)| rounded half-even to kLengthDigits
  std::optional<int> spread;   ///< even k only
};

/// Basis change at a shared breakpoint of consecutive realizable bases.
struct Transition {
  ExactReal at;
  std::vector<int> leaving;
  std::vector<int> entering;
  bool exceptional() const { return leaving.size() >= 2; }
};

struct ConjectureResult {
  std::string id;  ///< "1".."8" or "third-from-last"
  std::string statement;
  Verdict verdict = Verdict::not_applicable;
  std::string witness;  ///< first counterexample, or a note
};

struct PropositionCheck {
  Verdict verdict = Verdict::not_applicable;
  long bound = 0;  ///< k(n-k)/2 + 1
  long count = 0;  ///< N
  std::string detail;
};

struct StudyReport {
  int n = 0;
  int k = 0;
  std::vector<StudyEntry> realizable;  ///< in interval order I_1..I_N
  std::vector<Transition> transitions;
  std::vector<ExactReal> exceptional_points;
  std::vector<int> spreads;            ///< empty for odd k
  std::optional<int> msp;
  std::vector<ConjectureResult> conjectures;
  std::optional<double> correlation;   ///< nullopt when undefined
  PropositionCheck proposition_r;
};

/// Full report for one (n, k): 2 <= k <= n-1.
StudyReport study(int n, int k);
StudyReport study(const PiecewisePolynomial& m);

/// Per-report verdicts for conjectures 1-6 and 8, plus the third-from-last
/// piece formula. Conjecture 7 needs a range; see msp_monotone().
std::vector<ConjectureResult> check_conjectures(const StudyReport& report, const PiecewisePolynomial& m);

/// Pearson correlation of spreads against interval lengths (12-digit
/// decimals). nullopt for odd k or zero variance; requires N >= 2.
std::optional<double> correlation(const StudyReport& report);

/// N <= k(n-k)/2 + 1, with equality exactly when no exceptional point exists.
PropositionCheck proposition_r_check(const StudyReport& report);

/// Reports for n = lo..hi, computed on a pool of `jobs` threads, ordered by n.
std::vector<StudyReport> study_range(int k, int lo, int hi, unsigned jobs = 1);

struct SpreadRow {
  int n = 0;
  int msp = 0;
  std::optional<int> predicted;  ///< floor(sqrt(n-2)) + 2 for k = 4
};

struct SpreadStats {
  int k = 0;
  std::vector<SpreadRow> rows;
};

SpreadStats spread_table(int k, int lo, int hi, unsigned jobs = 1);
SpreadStats spread_table(const std::vector<StudyReport>& reports);
/// Conjecture 7 over the rows of a spread table.
ConjectureResult msp_monotone(const SpreadStats& stats);

struct ExceptionalPairCount {
  int lo = 0;
  int hi = 0;
  int count = 0;
  std::vector<int> ns;
};

/// Number of n in [lo, hi] with at least one exceptional point, per sub-range.
std::vector<ExceptionalPairCount> exceptional_pair_stats(int k, const std::vector<std::pair<int, int>>& ranges,
                                                         unsigned jobs = 1);
std::vector<ExceptionalPairCount> exceptional_pair_stats(const std::vector<StudyReport>& reports,
                                                         const std::vector<std::pair<int, int>>& ranges);

/// floor(sqrt(n-2)) + 2.
int predicted_msp_k4(int n);

// CSV tables -----------------------------------------------------------------

/// Exact rendering of a point: "a/b", or "root(<poly>;[lo,hi])" for irrationals.
std::string exact_string(const ExactReal& x);

std::string table1_csv(const StudyReport& report, int length_digits = 3);
std::string table2_csv(int k, const std::vector<ExceptionalPairCount>& counts);
std::string table3_csv(const std::vector<StudyReport>& reports);
std::string table4_csv(const SpreadStats& stats);
std::string table5_csv(const std::vector<StudyReport>& reports);

}  // namespace kwise
