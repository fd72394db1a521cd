#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwise/closed_forms.hpp"
#include "kwise/piecewise.hpp"

namespace kwise {

/// Parameters outside 1 <= k <= n, 0 <= p <= 1 (or a stricter per-call domain).
class ParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The piecewise synthesis and the simplex oracle disagree.
class OracleMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EvalMode {
  piecewise,  ///< evaluate the synthesized piecewise polynomial
  oracle,     ///< run the exact simplex only
  checked,    ///< both, and throw OracleMismatch unless equal
};

/// M(n, k, p) exactly. k = n, k = 1, p = 0 and p = 1 are answered directly.
Rational m_value(int n, int k, const Rational& p, EvalMode mode = EvalMode::piecewise);
/// Evaluation against an already synthesized M(n, k, .).
Rational m_value(const PiecewisePolynomial& m, const Rational& p);

/// An optimal distribution at p together with the checks performed on it.
struct DistributionReport {
  OptimizingDistribution distribution;
  std::optional<DualBasis> basis;             ///< active basis (absent for trivial cases)
  std::vector<std::string> closed_forms_checked;
  bool closed_forms_match = true;
};

/// The optimal v-vector at p from the active piece's basis. Every constraint is
/// verified exactly, and every closed-form distribution whose validity interval
/// contains p must agree with it; violations throw std::logic_error.
DistributionReport optimizing_distribution(int n, int k, const Rational& p);
DistributionReport optimizing_distribution(const PiecewisePolynomial& m, const Rational& p);

struct BoundCheck {
  std::string label;  ///< "m=0", "m=2", ..., or "B(n,k,1-p)"
  int m = -1;         ///< -1 for the B(n,k,1-p) bound
  Rational bound;
  bool holds = false;
  bool tight = false;
};

struct UpperBoundReport {
  Rational value;
  std::vector<BoundCheck> checks;
  bool all_hold() const;
};

/// Compares M(n,k,p) with p^{k-m} B(n-k+m,m,p)/C(n-k+m-1,m) for each even m <= k
/// and, for even k, with B(n,k,1-p).
UpperBoundReport verify_upper_bounds(int n, int k, const Rational& p);
UpperBoundReport verify_upper_bounds(const PiecewisePolynomial& m, const Rational& p);

/// piecewise(n, k+1) equals p * piecewise(n-1, k). Requires even k, 2 <= k <= n-2.
bool verify_odd_reduction(int n, int k);

// Theorem validators ----------------------------------------------------------

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct TheoremCheck {
  std::string id;  ///< "3", "4", "5", "6", "7", "props", "odd-reduction"
  std::string description;
  Verdict verdict = Verdict::not_applicable;
  std::string detail;
};

/// Validator groups; "all" expands to every group.
const std::vector<std::string>& theorem_ids();

/// Runs the requested groups against piecewise(n, k). A group explicitly
/// requested outside its domain throws ParameterError; under "all" it is
/// reported as not applicable.
std::vector<TheoremCheck> verify_theorems(int n, int k, const std::set<std::string>& which);
std::vector<TheoremCheck> verify_theorems(const PiecewisePolynomial& m, const std::set<std::string>& which);

}  // namespace kwise
