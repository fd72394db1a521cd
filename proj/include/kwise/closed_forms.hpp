#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kwise/piecewise.hpp"

namespace kwise {

/// Thrown when a closed form is requested outside its parameter domain
/// (e.g. an even-k-only formula for odd k).
class FormulaDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A known polynomial expression for M(n,k,.) on an interval with exact endpoints.
struct ClosedForm {
  std::string name;
  Polynomial poly;
  ExactInterval validity;
  /// Optimal basis on the interval, when the formula names one.
  std::optional<DualBasis> basis;
  /// v_0..v_n as polynomials in p, when a closed-form distribution is known.
  std::optional<std::vector<Polynomial>> distribution;
};

// Breakpoints ---------------------------------------------------------------

/// p_1 = 1/(n-k+1): right end of the first interval.
Rational first_breakpoint(int n, int k);
/// 1 - C(m,1)p + (5/6)C(m,2)p^2 - (1/2)C(m,3)p^3 with m = n-k+3.
Polynomial second_breakpoint_cubic(int n, int k);
/// p_2: 2/(n-1) for k=2, 2/(n-2) for k=3, otherwise the root of the cubic in
/// [1/(n-k+1), 2/(n-k+1)]. Requires 2 <= k <= n-2.
ExactReal second_breakpoint(int n, int k);
/// Left end of the second-to-last interval, computed on its own (the cubic in
/// 1-p on [1-2/(n-k+1), 1-1/(n-k+1)] for k >= 4; (n-3)/(n-1) for k = 2).
/// Requires even k with 2 <= k <= n-2.
ExactReal second_to_last_breakpoint(int n, int k);

// Pieces ---------------------------------------------------------------------

/// p^k on [0, 1/(n-k+1)], with its distribution.
ClosedForm first_interval_form(int n, int k);
/// p^{k-2} B(n-k+2,2,p) / C(n-k+1,2) on [p_1, p_2]. Requires k <= n-2.
ClosedForm second_interval_form(int n, int k);
/// B(n,k,1-p) on [1 - 1/(n-k+1), 1]. Requires even k.
ClosedForm last_interval_form(int n, int k);
/// B(n,k,1-p) + C(n,k+1)/C(n-k+1,2) (1-p)^{k-1} B(n-k+1,1,1-p) on [pbar_2, pbar_1].
/// Requires even k <= n-2.
ClosedForm second_to_last_interval_form(int n, int k);
/// Conjectured: B(n,k,1-p) + C(n,k+1)/C(n-k+3,4) (1-p)^{k-3} B(n-k+3,3,1-p),
/// the expected piece just left of the second-to-last one. The validity is left
/// as [0, 1]; callers compare against the computed piece.
Polynomial third_from_last_conjecture(int n, int k);

/// k = 2 catalog: piece j on [(j-1)/(n-1), j/(n-1)] for j = 1..n-1. Requires n >= 3.
std::vector<ClosedForm> k2_catalog(int n);
/// k = 3 catalog: piece j on [(j-1)/(n-2), j/(n-2)] for j = 1..n-2. Requires n >= 4.
std::vector<ClosedForm> k3_catalog(int n);

/// p^{k-m} B(n-k+m, m, p) / C(n-k+m-1, m), an upper bound on M for even m in [0, k].
Polynomial upper_bound_poly(int n, int k, int m);

/// Everything that applies to (n, k).
struct ClosedFormCatalog {
  int n = 0;
  int k = 0;
  ClosedForm first;
  std::optional<ClosedForm> second;
  std::optional<ClosedForm> last;
  std::optional<ClosedForm> second_to_last;
  std::vector<ClosedForm> full;  ///< complete catalog for k = 2 or k = 3
};

/// Requires 2 <= k <= n-1.
ClosedFormCatalog closed_forms(int n, int k);

}  // namespace kwise
