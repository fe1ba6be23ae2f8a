#pragma once

#include <vector>

namespace divlab {

// Laurent data of zeta^k at s = 1 and the degree-(k-1) residue polynomial
// that forms the main term x*P_{k-1}(log x) of the divisor sum.
struct MainTermModel {
  int k = 1;
  // coeffs[j] multiplies (log x)^j; coeffs.size() == k.
  std::vector<double> coeffs;
  double zeta_k0 = -0.5;  // zeta^k(0) = (-1/2)^k

  double poly(double logx) const {
    double v = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) v = v * logx + coeffs[j];
    return v;
  }

  // x*P_{k-1}(log x) + zeta^k(0), the full main term subtracted from the
  // divisor sum.
  double main_term(double x) const;
};

struct StieltjesTable {
  std::vector<double> gamma;       // gamma_0 .. gamma_kmax
  std::vector<double> err_budget;  // per-entry absolute error bound
};

// Stieltjes constants by Euler-Maclaurin acceleration of the defining limit
//   gamma_j = lim_N ( sum_{n<=N} log^j n / n - log^{j+1}N/(j+1) ).
// err_budget holds twice the first omitted correction term plus a rounding
// allowance; it stays below 1e-12 for j <= 12.
StieltjesTable stieltjes(int kmax);

// Precomputed gamma_0..gamma_12 (computed once via stieltjes() and frozen).
const StieltjesTable& stieltjes_cached();

// Laurent coefficients of zeta^k(s) about s=1: returns c such that
// zeta^k(s) = sum_{j=0}^{k+m} c[j] * (s-1)^(j-k).  Requires k >= 1, m <= 8.
std::vector<double> zeta_laurent_pow(int k, int m);

// Residue polynomial of zeta^k(s) x^s / s at s = 1, as a polynomial in
// log x, via truncated series multiplication.  k = 1 gives P_0 = 1.
MainTermModel main_term_poly(int k);

}  // namespace divlab
