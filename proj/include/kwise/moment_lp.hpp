#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kwise/polynomial.hpp"

namespace kwise {

/// The moment LP for (n, k): maximize w_n subject to A w = d(p), w >= 0, where
/// column i of A is a_i = (C(i,0), ..., C(i,k)) and d(p)_t = C(n,t) p^t.
/// In v-coordinates (w_i = C(n,i) v_i) the rows read
/// sum_{j>=i} C(n-i, j-i) v_j = p^i for 0 <= i <= k.
struct LPInstance {
  int n = 0;
  int k = 0;
  /// (k+1) x (n+1), entry [t][i] = C(i, t).
  std::vector<std::vector<Integer>> matrix;
  /// d_t(p) = C(n, t) p^t.
  std::vector<Polynomial> rhs;

  static LPInstance build(int n, int k);
  std::vector<Rational> rhs_at(const Rational& p) const;
};

/// A column index set of size k+1 with the dual-feasible shape: contains n;
/// contains 0 when k is odd; the rest split into pairs {a, a+1} of consecutive
/// integers with successive pairs at least 2 apart.
class DualBasis {
 public:
  /// Validates the shape; throws std::invalid_argument otherwise.
  DualBasis(int n, int k, std::vector<int> indices);

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<int>& indices() const { return indices_; }
  bool contains(int i) const;

  /// Lower elements a_1 < ... < a_r of the consecutive pairs.
  std::vector<int> pair_starts() const;
  /// Largest minus smallest element of I \ {n} (even k only; odd k includes 0).
  int spread() const;
  /// Sum of the pair starts.
  int pair_sum() const;
  /// Image under a -> n-1-a on the paired elements (n kept). Even k only.
  DualBasis mirror() const;

  std::string to_string() const;

  friend bool operator==(const DualBasis& a, const DualBasis& b) { return a.indices_ == b.indices_; }
  friend bool operator<(const DualBasis& a, const DualBasis& b) { return a.indices_ < b.indices_; }

 private:
  int n_, k_;
  std::vector<int> indices_;
};

/// Every dual-feasible index set for (n, k), lexicographically increasing.
/// Requires 2 <= k <= n-1.
std::vector<DualBasis> enumerate_dual_bases(int n, int k);
/// Streaming form of enumerate_dual_bases.
void for_each_dual_basis(int n, int k, const std::function<void(const DualBasis&)>& visit);

/// B(I)^{-1}: rows indexed by the basis elements (in increasing order), columns t = 0..k.
struct BasisInverse {
  std::vector<int> rows;
  std::vector<std::vector<Rational>> entries;
  const std::vector<Rational>& row(int s) const;
};

/// Closed-form inverse:
///   b_{s,t} = (-1)^t sum_{a=0..t} (-1)^a C(t,a) prod_{u != s}(u - a) / prod_{u != s}(u - s).
/// Valid for any set of distinct indices.
BasisInverse basis_inverse(const std::vector<int>& indices, int k);
inline BasisInverse basis_inverse(const DualBasis& basis) { return basis_inverse(basis.indices(), basis.k()); }

/// Independent route: Gauss-Jordan elimination of B(I) over the rationals.
BasisInverse basis_inverse_gauss(const std::vector<int>& indices, int k);

/// B(I) times the given inverse equals the identity.
bool is_inverse(const std::vector<int>& indices, int k, const BasisInverse& inv);

/// The basic solution of a basis as polynomials in p.
struct FeasibilityFunctions {
  std::vector<int> indices;
  std::vector<Polynomial> w;  ///< w_i(p) = (B(I)^{-1} d(p))_i
  std::vector<Polynomial> v;  ///< v_i(p) = w_i(p) / C(n, i)
  const Polynomial& w_of(int i) const;
  const Polynomial& v_of(int i) const;
};

FeasibilityFunctions feasibility_functions(const DualBasis& basis);
FeasibilityFunctions feasibility_functions(const std::vector<int>& indices, int n, int k);

/// A distribution on the exchangeable configurations: v_i is the probability
/// that a fixed set of i bits is 1 and the rest 0; w_i = C(n, i) v_i.
struct OptimizingDistribution {
  int n = 0;
  int k = 0;
  Rational p;
  std::vector<Rational> v;
  std::vector<Rational> w;

  static OptimizingDistribution from_v(int n, int k, const Rational& p, std::vector<Rational> v);
  /// Nonnegativity, total mass 1, and the k+1 moment equations, exactly.
  bool satisfies_constraints() const;
  /// Describes the first violated constraint, empty when all hold.
  std::string violation() const;
  /// Indices with v_i > 0.
  std::vector<int> support() const;
};

/// The basic solution of `basis` evaluated at p (may be infeasible).
OptimizingDistribution basic_solution(const DualBasis& basis, const Rational& p);

struct SimplexResult {
  Rational value;
  OptimizingDistribution distribution;
  int pivots = 0;
};

/// Exact two-phase primal simplex with Bland's rule on the v-form of the LP.
/// Requires 1 <= k <= n and 0 <= p <= 1.
SimplexResult simplex_solve(int n, int k, const Rational& p);

/// max over dual-feasible bases whose basic solution is nonnegative at p of
/// the objective row. Independent of the piecewise synthesis.
Rational basis_scan_value(int n, int k, const Rational& p);

}  // namespace kwise
