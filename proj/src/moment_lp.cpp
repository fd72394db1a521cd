#include "kwise/moment_lp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kwise {

LPInstance LPInstance::build(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::domain_error("LPInstance: requires 1 <= k <= n");
  LPInstance lp;
  lp.n = n;
  lp.k = k;
  lp.matrix.assign(static_cast<std::size_t>(k + 1), std::vector<Integer>(static_cast<std::size_t>(n + 1)));
  for (int t = 0; t <= k; ++t)
    for (int i = 0; i <= n; ++i) lp.matrix[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] = binomial(i, t);
  for (int t = 0; t <= k; ++t) lp.rhs.push_back(Polynomial::monomial(Rational(binomial(n, t)), static_cast<unsigned>(t)));
  return lp;
}

std::vector<Rational> LPInstance::rhs_at(const Rational& p) const {
  std::vector<Rational> out;
  out.reserve(rhs.size());
  for (const auto& d : rhs) out.push_back(d(p));
  return out;
}

// --------------------------------------------------------------------------
// DualBasis

DualBasis::DualBasis(int n, int k, std::vector<int> indices) : n_(n), k_(k), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("not a dual feasible basis " + to_string() + ": " + why);
  };
  if (static_cast<int>(indices_.size()) != k + 1) fail("size must be k+1");
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) fail("repeated index");
  if (indices_.front() < 0 || indices_.back() != n) fail("must contain n and lie in [0, n]");
  std::size_t first = 0;
  if (k % 2 == 1) {
    if (indices_.front() != 0) fail("odd k requires 0");
    first = 1;
  }
  int prev_start = -2;
  for (std::size_t i = first; i + 1 < indices_.size(); i += 2) {
    if (indices_[i + 1] != indices_[i] + 1) fail("elements must come in consecutive pairs");
    if (indices_[i] < prev_start + 2) fail("pairs must be separated");
    prev_start = indices_[i];
  }
}

bool DualBasis::contains(int i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

std::vector<int> DualBasis::pair_starts() const {
  std::vector<int> out;
  std::size_t first = (k_ % 2 == 1) ? 1 : 0;
  for (std::size_t i = first; i + 1 < indices_.size(); i += 2) out.push_back(indices_[i]);
  return out;
}

int DualBasis::spread() const { return indices_[indices_.size() - 2] - indices_.front(); }

int DualBasis::pair_sum() const {
  int s = 0;
  for (int a : pair_starts()) s += a;
  return s;
}

DualBasis DualBasis::mirror() const {
  if (k_ % 2 == 1) throw std::logic_error("mirror is defined for even k only");
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < indices_.size(); ++i) out.push_back(n_ - 1 - indices_[i]);
  out.push_back(n_);
  return DualBasis(n_, k_, std::move(out));
}

std::string DualBasis::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) os << (i ? "," : "") << indices_[i];
  os << "}";
  return os.str();
}

void for_each_dual_basis(int n, int k, const std::function<void(const DualBasis&)>& visit) {
  if (k < 2 || k > n - 1) throw std::domain_error("enumerate_dual_bases: requires 2 <= k <= n-1");
  const int pairs = k / 2;
  const bool odd = k % 2 == 1;
  const int min_start = odd ? 1 : 0;
  const int max_start = n - 2;  // a + 1 <= n - 1
  std::vector<int> starts(static_cast<std::size_t>(pairs));
  std::function<void(int, int)> rec = [&](int j, int lo) {
    if (j == pairs) {
      std::vector<int> idx;
      if (odd) idx.push_back(0);
      for (int a : starts) {
        idx.push_back(a);
        idx.push_back(a + 1);
      }
      idx.push_back(n);
      visit(DualBasis(n, k, std::move(idx)));
      return;
    }
    // Leave room for the remaining pairs.
    int hi = max_start - 2 * (pairs - 1 - j);
    for (int a = lo; a <= hi; ++a) {
      starts[static_cast<std::size_t>(j)] = a;
      rec(j + 1, a + 2);
    }
  };
  rec(0, min_start);
}

std::vector<DualBasis> enumerate_dual_bases(int n, int k) {
  std::vector<DualBasis> out;
  for_each_dual_basis(n, k, [&](const DualBasis& b) { out.push_back(b); });
  return out;
}

// --------------------------------------------------------------------------
// Basis inverse

const std::vector<Rational>& BasisInverse::row(int s) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), s);
  if (it == rows.end() || *it != s) throw std::out_of_range("BasisInverse: no row " + std::to_string(s));
  return entries[static_cast<std::size_t>(it - rows.begin())];
}

BasisInverse basis_inverse(const std::vector<int>& indices, int k) {
  if (static_cast<int>(indices.size()) != k + 1) throw std::invalid_argument("basis_inverse: need k+1 indices");
  BasisInverse inv;
  inv.rows = indices;
  std::sort(inv.rows.begin(), inv.rows.end());
  for (int s : inv.rows) {
    Integer denom = 1;
    for (int u : inv.rows)
      if (u != s) denom *= (u - s);
    // prod_{u != s}(u - a) for a = 0..k
    std::vector<Integer> prod(static_cast<std::size_t>(k + 1), 1);
    for (int a = 0; a <= k; ++a)
      for (int u : inv.rows)
        if (u != s) prod[static_cast<std::size_t>(a)] *= (u - a);
    std::vector<Rational> row(static_cast<std::size_t>(k + 1));
    for (int t = 0; t <= k; ++t) {
      Integer sum = 0;
      for (int a = 0; a <= t; ++a) {
        Integer term = binomial(t, a) * prod[static_cast<std::size_t>(a)];
        if (a % 2 == 0) sum += term; else sum -= term;
      }
      if (t % 2 == 1) sum = -sum;
      row[static_cast<std::size_t>(t)] = make_rational(sum, denom);
    }
    inv.entries.push_back(std::move(row));
  }
  return inv;
}

BasisInverse basis_inverse_gauss(const std::vector<int>& indices, int k) {
  const std::size_t m = static_cast<std::size_t>(k + 1);
  if (indices.size() != m) throw std::invalid_argument("basis_inverse_gauss: need k+1 indices");
  std::vector<int> cols = indices;
  std::sort(cols.begin(), cols.end());
  // Augmented [B | I], B[t][j] = C(cols[j], t).
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(2 * m));
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t j = 0; j < m; ++j) a[t][j] = Rational(binomial(cols[j], static_cast<long>(t)));
    a[t][m + t] = 1;
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    while (piv < m && a[piv][c] == 0) ++piv;
    if (piv == m) throw std::domain_error("basis_inverse_gauss: singular basis");
    std::swap(a[c], a[piv]);
    Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * m; ++j) a[r][j] -= f * a[c][j];
    }
  }
  BasisInverse out;
  out.rows = cols;
  for (std::size_t r = 0; r < m; ++r) out.entries.emplace_back(a[r].begin() + static_cast<long>(m), a[r].end());
  return out;
}

bool is_inverse(const std::vector<int>& indices, int k, const BasisInverse& inv) {
  std::vector<int> cols = indices;
  std::sort(cols.begin(), cols.end());
  const std::size_t m = static_cast<std::size_t>(k + 1);
  if (inv.rows != cols || inv.entries.size() != m) return false;
  // (B^{-1} B)[r][j] = sum_t b_{r,t} C(cols[j], t)
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < m; ++j) {
      Rational acc = 0;
      for (std::size_t t = 0; t < m; ++t) acc += inv.entries[r][t] * Rational(binomial(cols[j], static_cast<long>(t)));
      if (acc != (r == j ? 1 : 0)) return false;
    }
  return true;
}

// --------------------------------------------------------------------------
// Basic solutions

const Polynomial& FeasibilityFunctions::w_of(int i) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), i);
  if (it == indices.end() || *it != i) throw std::out_of_range("not a basic index");
  return w[static_cast<std::size_t>(it - indices.begin())];
}

const Polynomial& FeasibilityFunctions::v_of(int i) const {
  auto it = std::lower_bound(indices.begin(), indices.end(), i);
  if (it == indices.end() || *it != i) throw std::out_of_range("not a basic index");
  return v[static_cast<std::size_t>(it - indices.begin())];
}

FeasibilityFunctions feasibility_functions(const std::vector<int>& indices, int n, int k) {
  BasisInverse inv = basis_inverse(indices, k);
  FeasibilityFunctions f;
  f.indices = inv.rows;
  std::vector<Integer> cn;
  for (int t = 0; t <= k; ++t) cn.push_back(binomial(n, t));
  for (std::size_t r = 0; r < inv.rows.size(); ++r) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(k + 1));
    for (int t = 0; t <= k; ++t)
      coeffs[static_cast<std::size_t>(t)] = inv.entries[r][static_cast<std::size_t>(t)] * cn[static_cast<std::size_t>(t)];
    Polynomial w(std::move(coeffs));
    Polynomial v = w * (Rational(1) / Rational(binomial(n, inv.rows[r])));
    f.w.push_back(std::move(w));
    f.v.push_back(std::move(v));
  }
  return f;
}

FeasibilityFunctions feasibility_functions(const DualBasis& basis) {
  return feasibility_functions(basis.indices(), basis.n(), basis.k());
}

OptimizingDistribution OptimizingDistribution::from_v(int n, int k, const Rational& p, std::vector<Rational> v) {
  OptimizingDistribution d;
  d.n = n;
  d.k = k;
  d.p = p;
  d.v = std::move(v);
  d.v.resize(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) d.w.push_back(d.v[static_cast<std::size_t>(i)] * Rational(binomial(n, i)));
  return d;
}

std::string OptimizingDistribution::violation() const {
  for (int i = 0; i <= n; ++i)
    if (v[static_cast<std::size_t>(i)] < 0) return "v_" + std::to_string(i) + " < 0";
  Rational mass = 0;
  for (const auto& x : w) mass += x;
  if (mass != 1) return "total mass " + kwise::to_string(mass) + " != 1";
  Rational pi = 1;
  for (int i = 0; i <= k; ++i) {
    Rational acc = 0;
    for (int j = i; j <= n; ++j) acc += Rational(binomial(n - i, j - i)) * v[static_cast<std::size_t>(j)];
    if (acc != pi) return "moment equation " + std::to_string(i) + " fails";
    pi *= p;
  }
  return {};
}

bool OptimizingDistribution::satisfies_constraints() const { return violation().empty(); }

std::vector<int> OptimizingDistribution::support() const {
  std::vector<int> s;
  for (int i = 0; i <= n; ++i)
    if (v[static_cast<std::size_t>(i)] > 0) s.push_back(i);
  return s;
}

OptimizingDistribution basic_solution(const DualBasis& basis, const Rational& p) {
  auto f = feasibility_functions(basis);
  std::vector<Rational> v(static_cast<std::size_t>(basis.n() + 1));
  for (std::size_t r = 0; r < f.indices.size(); ++r) v[static_cast<std::size_t>(f.indices[r])] = f.v[r](p);
  return OptimizingDistribution::from_v(basis.n(), basis.k(), p, std::move(v));
}

// --------------------------------------------------------------------------
// Simplex oracle

namespace {

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::vector<std::size_t> basis)
      : t_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return t_.empty() ? 0 : t_[0].size(); }

  /// Maximizes c.x over the current basis with Bland's rule. Columns flagged in
  /// `blocked` never enter. Returns false if unbounded.
  bool maximize(const std::vector<Rational>& c, const std::vector<bool>& blocked, int& pivots) {
    while (true) {
      std::size_t enter = cols();
      for (std::size_t j = 0; j < cols() && enter == cols(); ++j) {
        if (blocked[j] || is_basic(j)) continue;
        Rational d = c[j];
        for (std::size_t r = 0; r < rows(); ++r) d -= c[basis_[r]] * t_[r][j];
        if (d > 0) enter = j;
      }
      if (enter == cols()) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (t_[r][enter] <= 0) continue;
        Rational ratio = rhs_[r] / t_[r][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / t_[r][c];
    for (auto& x : t_[r]) x *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t j = 0; j < cols(); ++j) t_[i][j] -= f * t_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<long>(r));
    rhs_.erase(rhs_.begin() + static_cast<long>(r));
    basis_.erase(basis_.begin() + static_cast<long>(r));
  }

  bool is_basic(std::size_t j) const { return std::find(basis_.begin(), basis_.end(), j) != basis_.end(); }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& rhs(std::size_t r) const { return rhs_[r]; }
  const Rational& at(std::size_t r, std::size_t c) const { return t_[r][c]; }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

SimplexResult simplex_solve(int n, int k, const Rational& p) {
  if (n < 1 || k < 1 || k > n) throw std::domain_error("simplex_solve: requires 1 <= k <= n");
  if (p < 0 || p > 1) throw std::domain_error("simplex_solve: requires 0 <= p <= 1");
  const std::size_t m = static_cast<std::size_t>(k + 1);
  const std::size_t nv = static_cast<std::size_t>(n + 1);
  // Columns: v_0..v_n, then one artificial per row.
  std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(nv + m));
  std::vector<Rational> rhs(m);
  std::vector<std::size_t> basis(m);
  Rational pi = 1;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < nv; ++j) rows[i][j] = Rational(binomial(n - static_cast<long>(i), static_cast<long>(j - i)));
    rows[i][nv + i] = 1;
    rhs[i] = pi;
    basis[i] = nv + i;
    pi *= p;
  }
  Tableau tab(std::move(rows), std::move(rhs), std::move(basis));
  SimplexResult result;

  std::vector<bool> blocked(nv + m, false);
  std::vector<Rational> phase1(nv + m, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[nv + i] = -1;
  tab.maximize(phase1, blocked, result.pivots);
  for (std::size_t r = 0; r < tab.rows(); ++r)
    if (tab.basis()[r] >= nv && tab.rhs(r) != 0) throw std::logic_error("simplex_solve: LP infeasible");

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < tab.rows();) {
    if (tab.basis()[r] < nv) {
      ++r;
      continue;
    }
    std::size_t col = nv;
    for (std::size_t j = 0; j < nv && col == nv; ++j)
      if (!tab.is_basic(j) && tab.at(r, j) != 0) col = j;
    if (col == nv) {
      tab.drop_row(r);
    } else {
      tab.pivot(r, col);
      ++r;
    }
  }

  for (std::size_t i = 0; i < m; ++i) blocked[nv + i] = true;
  std::vector<Rational> phase2(nv + m, 0);
  phase2[nv - 1] = 1;
  if (!tab.maximize(phase2, blocked, result.pivots)) throw std::logic_error("simplex_solve: LP unbounded");

  std::vector<Rational> v(nv);
  for (std::size_t r = 0; r < tab.rows(); ++r) v[tab.basis()[r]] = tab.rhs(r);
  result.value = v[nv - 1];
  result.distribution = OptimizingDistribution::from_v(n, k, p, std::move(v));
  return result;
}

Rational basis_scan_value(int n, int k, const Rational& p) {
  bool any = false;
  Rational best;
  for_each_dual_basis(n, k, [&](const DualBasis& b) {
    auto f = feasibility_functions(b);
    for (const auto& v : f.v)
      if (v(p) < 0) return;
    Rational val = f.v_of(n)(p);
    if (!any || val > best) best = val;
    any = true;
  });
  if (!any) throw std::logic_error("basis_scan_value: no basis is primal feasible");
  return best;
}

}  // namespace kwise
