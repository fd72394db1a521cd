#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kwise/moment_lp.hpp"
#include "kwise/real_roots.hpp"

namespace kwise {

/// The feasibility regions of the realizable bases do not tile [0, 1].
class TilingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Some L(I) splits into two or more positive-length intervals.
class NonIntervalFeasibility : public TilingError {
 public:
  using TilingError::TilingError;
};

/// Closed interval [lo, hi] with exact endpoints.
struct ExactInterval {
  ExactReal lo;
  ExactReal hi;
  /// Length rounded to `digits` decimals (exact when both ends are rational).
  std::string length_decimal(int digits) const;
  double length_approx() const;
};

/// A dual-feasible basis whose feasibility region has positive length.
struct RealizableBasis {
  DualBasis basis;
  ExactInterval interval;
  FeasibilityFunctions functions;
};

/// Positive-length part of {p in [0,1] : v_i(p) >= 0 for every basic i}.
/// Returns nullopt when that part is empty; throws NonIntervalFeasibility when
/// it is not a single interval.
std::optional<ExactInterval> feasibility_interval(const FeasibilityFunctions& functions);

/// All realizable bases for (n, k), in lexicographic order of the index sets.
/// `jobs` > 1 spreads the per-basis work over that many threads.
std::vector<RealizableBasis> realizable_bases(int n, int k, unsigned jobs = 1);

/// p -> M(n, k, p) as ordered pieces over [0, 1].
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(int n, int k, std::vector<ExactReal> breakpoints, std::vector<Polynomial> pieces,
                      std::vector<DualBasis> bases);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t size() const { return pieces_.size(); }
  const std::vector<ExactReal>& breakpoints() const { return breakpoints_; }
  const std::vector<Polynomial>& pieces() const { return pieces_; }
  const std::vector<DualBasis>& bases() const { return bases_; }
  ExactInterval interval(std::size_t i) const { return {breakpoints_[i], breakpoints_[i + 1]}; }

  /// Index of a piece whose closed interval contains p (the left one at a breakpoint).
  std::size_t piece_index(const Rational& p) const;
  Rational operator()(const Rational& p) const;

  /// Pieces agree at every interior breakpoint (exactly, also at algebraic ones).
  bool is_continuous() const;

 private:
  int n_, k_;
  std::vector<ExactReal> breakpoints_;
  std::vector<Polynomial> pieces_;
  std::vector<DualBasis> bases_;
};

/// Sorts the realizable bases by interval, checks that they tile [0, 1] with
/// exactly matching endpoints, and assembles M(n, k, .). Throws TilingError.
PiecewisePolynomial assemble_piecewise(int n, int k, const std::vector<RealizableBasis>& realizable);

/// Full synthesis by enumeration of every dual-feasible shape. Requires 2 <= k <= n-1.
PiecewisePolynomial piecewise(int n, int k, unsigned jobs = 1);

/// Whether two piecewise functions agree on [0,1] (pieces compared as
/// polynomials on every cell of the merged breakpoint set).
bool same_function(const PiecewisePolynomial& a, const PiecewisePolynomial& b);

}  // namespace kwise
