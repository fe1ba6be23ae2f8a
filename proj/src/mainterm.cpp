#include "mainterm.hpp"

#include <cmath>

#include "bernoulli.hpp"
#include "errors.hpp"
#include "kahan.hpp"

namespace divlab {

namespace {

// Coefficient vector of f^(r)(u) = u^(-1-r) * sum_i a[i] log^i u for
// f(u) = log^j u / u, advanced one derivative per call.
void advance_derivative(std::vector<double>& a, int r) {
  std::vector<double> next(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    next[i] -= (1.0 + r) * a[i];
    if (i + 1 < a.size()) next[i] += (i + 1.0) * a[i + 1];
  }
  a.swap(next);
}

double eval_logpoly(const std::vector<double>& a, double logu) {
  double v = 0.0;
  for (std::size_t i = a.size(); i-- > 0;) v = v * logu + a[i];
  return v;
}

// One Stieltjes constant (times (-1)^j j!) with its error budget.
void stieltjes_raw(int j, double& value, double& budget) {
  const int n0 = 1024;
  const int q = 13;  // correction terms

  // Partial limit at N = n0: sum log^j n / n - log^{j+1}(n0)/(j+1).
  KahanReal acc;
  for (int n = 1; n <= n0; ++n) {
    const double ln = std::log(static_cast<double>(n));
    acc.add(std::pow(ln, j) / n);
  }
  const double ln0 = std::log(static_cast<double>(n0));
  acc.add(-std::pow(ln0, j + 1) / (j + 1));

  // Euler-Maclaurin tail corrections at n0.
  const double fn0 = std::pow(ln0, j) / n0;
  acc.add(-0.5 * fn0);
  std::vector<double> deriv(j + 1, 0.0);
  deriv[j] = 1.0;  // f itself
  int order = 0;
  double u_pow = 1.0 / n0;  // n0^-(order+1)
  double last_term = 0.0;
  for (int m = 1; m <= q; ++m) {
    while (order < 2 * m - 1) {
      advance_derivative(deriv, order);
      ++order;
      u_pow /= n0;
    }
    double fac = 1.0;  // (2m)!
    for (int i = 2; i <= 2 * m; ++i) fac *= i;
    last_term = kBernoulli2v[m - 1] / fac * eval_logpoly(deriv, ln0) * u_pow;
    acc.add(-last_term);
  }
  value = acc.value();
  budget = 2.0 * std::fabs(last_term) + 1e-15 * (1.0 + std::fabs(value));
}

// Internal table goes past the public kmax=12 cap: high-order Laurent
// products of zeta^k consume gamma indices up to m + k - 1.
constexpr int kInternalMax = 24;

StieltjesTable compute_table(int kmax) {
  StieltjesTable t;
  t.gamma.resize(kmax + 1);
  t.err_budget.resize(kmax + 1);
  for (int j = 0; j <= kmax; ++j) {
    double raw, budget;
    stieltjes_raw(j, raw, budget);
    t.gamma[j] = raw;
    t.err_budget[j] = budget;
  }
  return t;
}

}  // namespace

StieltjesTable stieltjes(int kmax) {
  if (kmax < 0 || kmax > 12)
    throw UnsupportedError("stieltjes: kmax must be in [0, 12]");
  return compute_table(kmax);
}

const StieltjesTable& stieltjes_cached() {
  static const StieltjesTable table = compute_table(kInternalMax);
  return table;
}

std::vector<double> zeta_laurent_pow(int k, int m) {
  if (k < 1) throw DomainError("zeta_laurent_pow: k must be >= 1");
  if (m > 8) throw DomainError("zeta_laurent_pow: m must be <= 8");
  if (m < 0) m = 0;
  const auto& st = stieltjes_cached();

  // Factor series, coefficient of (s-1)^(j-1): base[0] = 1 (the pole),
  // base[j] = (-1)^{j-1} gamma_{j-1} / (j-1)!.  Orders above the requested
  // window cannot influence coefficients within it, so length k+m suffices.
  const int len = k + m + 1;
  std::vector<double> base(len, 0.0);
  base[0] = 1.0;
  double fact = 1.0;
  for (int j = 1; j < len; ++j) {
    if (j > 1) fact *= (j - 1);
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    base[j] = sign * st.gamma[j - 1] / fact;
  }

  std::vector<double> acc = base;
  for (int pass = 2; pass <= k; ++pass) {
    std::vector<double> next(len, 0.0);
    for (int i = 0; i < len; ++i)
      for (int j = 0; i + j < len; ++j) next[i + j] += acc[i] * base[j];
    acc.swap(next);
  }
  return acc;  // acc[j] multiplies (s-1)^(j-k)
}

double MainTermModel::main_term(double x) const {
  return x * poly(std::log(x)) + zeta_k0;
}

MainTermModel main_term_poly(int k) {
  if (k < 1 || k > 12) throw DomainError("main_term_poly: k must be in [1, 12]");
  MainTermModel model;
  model.k = k;
  model.zeta_k0 = std::pow(-0.5, k);
  model.coeffs.assign(k, 0.0);

  // Residue of zeta^k(s) x^s / s at s=1:  with w = s-1,
  //   x^s / s = x e^{wL} (1+w)^{-1} = x sum_j q_j(L) w^j,
  //   q_j(L) = sum_{i<=j} (-1)^{j-i} L^i / i!,
  // and the w^{-1} coefficient of the product collects z[0..k-1].
  const std::vector<double> z = zeta_laurent_pow(k, 0);
  double inv_fact = 1.0;
  for (int i = 0; i <= k - 1; ++i) {
    if (i > 0) inv_fact /= i;
    double c = 0.0;
    for (int j = 0; j + i <= k - 1; ++j) {
      const double sign = ((k - 1 - j - i) % 2 == 0) ? 1.0 : -1.0;
      c += z[j] * sign;
    }
    model.coeffs[i] = c * inv_fact;
  }
  return model;
}

}  // namespace divlab
