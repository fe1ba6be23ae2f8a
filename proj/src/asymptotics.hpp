#pragma once

#include <vector>

#include "constants.hpp"
#include "fitting.hpp"
#include "profile.hpp"

namespace divlab {

struct AsymptoticConstants {
  double a = 0.0;   // mean-square constant; a = b / (6 pi^2)
  double b = 0.0;   // sum d(n)^2 n^{-3/2}
  double c3 = 0.0;  // (1/(10 pi^2)) sum d_3(n)^2 n^{-4/3}
  double a1 = 0.0;  // -1/(4 pi^2), the log^2 coefficient anchor
  double b_budget = 0.0;
  double c3_budget = 0.0;
};

// B from the Dirichlet-series identity, cross-checked against the direct
// partial-summation route on the k = 2 table (NumericalError if the two
// brackets fail to overlap); C3 direct from the k = 3 table, cross-checked
// against the Euler-product acceleration to 1e-4 relative.
AsymptoticConstants asymptotic_constants(const DivisorTable& d2,
                                         const DivisorTable& d3);

struct RemainderProfile {
  int k = 0;
  double main_const = 0.0;  // A or C3
  std::vector<double> x;
  std::vector<double> rem;      // I2(x) - main_const x^p, p = 3/2 or 5/3
  double envelope_const = 0.0;  // sup |rem| / shape over the grid, with
                                // shape x log^4 x (k=2), x^{14/9+0.05} (k=3)
};

// Pointwise remainder of the mean-square asymptotic on the grid; for k = 2
// this is F(x) with F(1) = -A exactly.
RemainderProfile extract_remainder(const ErrorScan& scan, const GridSpec& grid,
                                   double main_const);

// Least squares of F against {x log^2 x, x log x, x}; the leading
// coefficient estimates a1.
ThreeTermFit fit_F(const RemainderProfile& prof);

struct ContradictionRow {
  double x = 0.0;
  double h = 0.0;            // x^{alpha/3}, clamped to [1, x - 1]
  double delta2 = 0.0;       // Delta^2(x)
  double sqrt_x = 0.0;
  double f_diff_term = 0.0;  // H^{-1} |F(x+H) - F(x-H)|, measured
  double smooth_term = 0.0;  // H^2 log^2 x
  double hyp_bound = 0.0;    // x^{2 alpha/3} log^2 x
  bool violated = false;     // sqrt_x > hyp_bound at this x
};

struct ContradictionReport {
  double alpha = 0.0;
  std::vector<ContradictionRow> rows;
  // Along a sequence with Delta^2(X) > X^{1/2} the left side grows like
  // X^{1/2} while the hypothesized bound grows like X^{2 alpha/3} (log
  // factors aside); the exponents clash exactly when alpha < 3/4.
  double lhs_exponent = 0.5;
  double rhs_exponent = 0.0;
  bool signal = false;
};

// Desk-scale illustration of why the remainder exponent cannot go below
// 3/4: tabulates the terms of the averaged-square inequality at each X and
// compares growth exponents.  Requires 0 < alpha < 1 and every X >= 4.
ContradictionReport contradiction_demo(const ErrorScan& scan2, double a_const,
                                       double alpha,
                                       const std::vector<double>& xlist);

// Integer X in [lo, hi] maximizing |Delta(X +- 0)| X^{-1/4} (both one-sided
// limits at the jump are scanned).
double find_large_delta(const ErrorScan& scan2, double lo, double hi);

}  // namespace divlab
