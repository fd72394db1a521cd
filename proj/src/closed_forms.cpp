#include "kwise/closed_forms.hpp"

#include "kwise/bonferroni.hpp"

namespace kwise {

namespace {

Rational binom_q(long n, long k) { return Rational(binomial(n, k)); }

Polynomial bonf_one_minus(long m, long l) { return bonferroni_poly(m, l).compose_one_minus(); }

Polynomial one_minus_pow(unsigned e) {
  Polynomial out = Polynomial::constant(1);
  for (unsigned i = 0; i < e; ++i) out = out * Polynomial::one_minus_x();
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw FormulaDomainError(what);
}

ExactReal unique_root(const Polynomial& f, const Rational& lo, const Rational& hi, const std::string& what) {
  auto roots = isolate_roots(f, lo, hi);
  if (roots.size() != 1)
    throw std::logic_error(what + ": expected one root in [" + to_string(lo) + ", " + to_string(hi) + "], found " +
                           std::to_string(roots.size()));
  return roots.front();
}

}  // namespace

Rational first_breakpoint(int n, int k) { return make_rational(1, n - k + 1); }

Polynomial second_breakpoint_cubic(int n, int k) {
  long m = n - k + 3;
  return Polynomial{Rational(1), -binom_q(m, 1), make_rational(5, 6) * binom_q(m, 2), make_rational(-1, 2) * binom_q(m, 3)};
}

ExactReal second_breakpoint(int n, int k) {
  require(k >= 2 && k <= n - 2, "second interval requires 2 <= k <= n-2");
  if (k == 2) return make_rational(2, n - 1);
  if (k == 3) return make_rational(2, n - 2);
  return unique_root(second_breakpoint_cubic(n, k), make_rational(1, n - k + 1), make_rational(2, n - k + 1), "p_2");
}

ExactReal second_to_last_breakpoint(int n, int k) {
  require(k % 2 == 0, "second-to-last interval formula requires even k");
  require(k >= 2 && k <= n - 2, "second-to-last interval requires 2 <= k <= n-2");
  if (k == 2) return make_rational(n - 3, n - 1);
  return unique_root(second_breakpoint_cubic(n, k).compose_one_minus(), 1 - make_rational(2, n - k + 1),
                     1 - make_rational(1, n - k + 1), "pbar_2");
}

ClosedForm first_interval_form(int n, int k) {
  require(k >= 1 && k <= n - 1, "first interval requires 1 <= k <= n-1");
  ClosedForm f;
  f.name = "first interval: p^k";
  f.poly = x_pow(static_cast<unsigned>(k));
  f.validity = {ExactReal(0), ExactReal(first_breakpoint(n, k))};
  std::vector<int> idx;
  std::vector<Polynomial> v(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= k - 1; ++i) {
    idx.push_back(i);
    v[static_cast<std::size_t>(i)] =
        Polynomial::one_minus_x() * x_pow(static_cast<unsigned>(i)) * bonferroni_poly(n - i - 1, k - i - 1);
  }
  idx.push_back(n);
  v[static_cast<std::size_t>(n)] = f.poly;
  f.basis = DualBasis(n, k, idx);
  f.distribution = std::move(v);
  return f;
}

ClosedForm second_interval_form(int n, int k) {
  require(k >= 2 && k <= n - 2, "second interval requires 2 <= k <= n-2");
  ClosedForm f;
  f.name = "second interval: p^(k-2) B(n-k+2,2,p) / C(n-k+1,2)";
  Rational scale = 1 / binom_q(n - k + 1, 2);
  Polynomial tail = x_pow(static_cast<unsigned>(k - 2)) * bonferroni_poly(n - k + 2, 2);
  f.poly = scale * tail;
  f.validity = {ExactReal(first_breakpoint(n, k)), second_breakpoint(n, k)};
  std::vector<int> idx;
  for (int i = 0; i <= k - 3; ++i) idx.push_back(i);
  idx.push_back(k - 1);
  idx.push_back(k);
  idx.push_back(n);
  std::vector<Polynomial> v(static_cast<std::size_t>(n + 1));
  for (int i : idx) {
    if (i == n) continue;
    Rational sgn_c = ((k - i - 1) % 2 == 0) ? 1 : -1;
    v[static_cast<std::size_t>(i)] = x_pow(static_cast<unsigned>(i)) * bonferroni_poly(n - i, k - i) +
                                     (sgn_c * binom_q(n - i - 1, k - i) * scale) * tail;
  }
  v[static_cast<std::size_t>(n)] = f.poly;
  f.basis = DualBasis(n, k, idx);
  f.distribution = std::move(v);
  return f;
}

ClosedForm last_interval_form(int n, int k) {
  require(k % 2 == 0, "last interval formula requires even k");
  require(k >= 2 && k <= n - 1, "last interval requires 2 <= k <= n-1");
  ClosedForm f;
  f.name = "last interval: B(n,k,1-p)";
  f.poly = bonf_one_minus(n, k);
  f.validity = {ExactReal(1 - first_breakpoint(n, k)), ExactReal(1)};
  std::vector<int> idx;
  std::vector<Polynomial> v(static_cast<std::size_t>(n + 1));
  for (int i = n - k; i <= n; ++i) {
    idx.push_back(i);
    v[static_cast<std::size_t>(i)] = one_minus_pow(static_cast<unsigned>(n - i)) * bonf_one_minus(i, i - (n - k));
  }
  f.basis = DualBasis(n, k, idx);
  f.distribution = std::move(v);
  return f;
}

ClosedForm second_to_last_interval_form(int n, int k) {
  require(k % 2 == 0, "second-to-last interval formula requires even k");
  require(k >= 2 && k <= n - 2, "second-to-last interval requires 2 <= k <= n-2");
  ClosedForm f;
  f.name = "second-to-last interval: B(n,k,1-p) + C(n,k+1)/C(n-k+1,2) (1-p)^(k-1) B(n-k+1,1,1-p)";
  Rational scale = 1 / binom_q(n - k + 1, 2);
  Polynomial tail = one_minus_pow(static_cast<unsigned>(k - 1)) * bonf_one_minus(n - k + 1, 1);
  f.poly = bonf_one_minus(n, k) + (binom_q(n, k + 1) * scale) * tail;
  f.validity = {second_to_last_breakpoint(n, k), ExactReal(1 - first_breakpoint(n, k))};
  // Basis {n-k-1, n-k, n-k+2, ..., n}; v_{n-i} indexed through i in n - I.
  std::vector<int> idx{n - k - 1, n - k};
  for (int j = n - k + 2; j <= n; ++j) idx.push_back(j);
  std::vector<Polynomial> v(static_cast<std::size_t>(n + 1));
  for (int j : idx) {
    int i = n - j;
    Rational sgn_c = ((k - i - 1) % 2 == 0) ? 1 : -1;
    v[static_cast<std::size_t>(j)] = one_minus_pow(static_cast<unsigned>(i)) * bonf_one_minus(n - i, k - i) -
                                     (sgn_c * binom_q(n - i, k + 1 - i) * scale) * tail;
  }
  f.basis = DualBasis(n, k, idx);
  f.distribution = std::move(v);
  return f;
}

Polynomial third_from_last_conjecture(int n, int k) {
  require(k % 2 == 0 && k >= 4 && k <= n - 2, "third-from-last conjecture needs even 4 <= k <= n-2");
  return bonf_one_minus(n, k) + (binom_q(n, k + 1) / binom_q(n - k + 3, 4)) *
                                    (one_minus_pow(static_cast<unsigned>(k - 3)) * bonf_one_minus(n - k + 3, 3));
}

std::vector<ClosedForm> k2_catalog(int n) {
  require(n >= 3, "k = 2 catalog requires n >= 3");
  std::vector<ClosedForm> out;
  for (int j = 1; j <= n - 1; ++j) {
    ClosedForm f;
    f.name = "k=2 piece j=" + std::to_string(j);
    Rational scale = 1 / binom_q(n - j + 1, 2);
    f.poly = scale * Polynomial{binom_q(j, 2), Rational(-n * (j - 1)), binom_q(n, 2)};
    f.validity = {ExactReal(make_rational(j - 1, n - 1)), ExactReal(make_rational(j, n - 1))};
    f.basis = DualBasis(n, 2, {j - 1, j, n});
    std::vector<Polynomial> v(static_cast<std::size_t>(n + 1));
    Polynomial omp = Polynomial::one_minus_x();
    v[static_cast<std::size_t>(j - 1)] = (1 / binom_q(n - 1, j - 1)) * omp * Polynomial{Rational(j), Rational(1 - n)};
    v[static_cast<std::size_t>(j)] = (1 / binom_q(n - 1, j)) * omp * Polynomial{Rational(1 - j), Rational(n - 1)};
    v[static_cast<std::size_t>(n)] = f.poly;
    f.distribution = std::move(v);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<ClosedForm> k3_catalog(int n) {
  require(n >= 4, "k = 3 catalog requires n >= 4");
  std::vector<ClosedForm> out;
  for (int j = 1; j <= n - 2; ++j) {
    ClosedForm f;
    f.name = "k=3 piece j=" + std::to_string(j);
    Rational scale = 1 / binom_q(n - j, 2);
    f.poly = x_pow(1) * (scale * Polynomial{binom_q(j, 2), Rational(-(n - 1) * (j - 1)), binom_q(n - 1, 2)});
    f.validity = {ExactReal(make_rational(j - 1, n - 2)), ExactReal(make_rational(j, n - 2))};
    f.basis = DualBasis(n, 3, {0, j, j + 1, n});
    std::vector<Polynomial> v(static_cast<std::size_t>(n + 1));
    Polynomial omp = Polynomial::one_minus_x();
    v[0] = (1 / binom_q(j + 1, 2)) * omp *
           Polynomial{binom_q(j + 1, 2), Rational(-j * (n - 1)), binom_q(n - 1, 2)};
    v[static_cast<std::size_t>(j)] =
        (1 / binom_q(n - 2, j - 1)) * x_pow(1) * omp * Polynomial{Rational(j), Rational(-(n - 2))};
    v[static_cast<std::size_t>(j + 1)] =
        (1 / binom_q(n - 2, j)) * x_pow(1) * omp * Polynomial{Rational(1 - j), Rational(n - 2)};
    v[static_cast<std::size_t>(n)] = f.poly;
    f.distribution = std::move(v);
    out.push_back(std::move(f));
  }
  return out;
}

Polynomial upper_bound_poly(int n, int k, int m) {
  require(m >= 0 && m <= k && m % 2 == 0, "upper bound requires even m in [0, k]");
  return (1 / binom_q(n - k + m - 1, m)) * x_pow(static_cast<unsigned>(k - m)) * bonferroni_poly(n - k + m, m);
}

ClosedFormCatalog closed_forms(int n, int k) {
  require(k >= 2 && k <= n - 1, "closed forms require 2 <= k <= n-1");
  ClosedFormCatalog c;
  c.n = n;
  c.k = k;
  c.first = first_interval_form(n, k);
  if (k <= n - 2) c.second = second_interval_form(n, k);
  if (k % 2 == 0) {
    c.last = last_interval_form(n, k);
    if (k <= n - 2) c.second_to_last = second_to_last_interval_form(n, k);
  }
  if (k == 2) c.full = k2_catalog(n);
  if (k == 3) c.full = k3_catalog(n);
  return c;
}

}  // namespace kwise
