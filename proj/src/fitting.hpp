#pragma once

#include <vector>

namespace divlab {

// Dense n x n solve by Gaussian elimination with partial pivoting (n small).
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b);

// Linear least squares via normal equations.  cols[j][i] is basis j at
// sample i.  Throws NumericalError on a singular / ill-conditioned system.
std::vector<double> lsq_solve(const std::vector<std::vector<double>>& cols,
                              const std::vector<double>& y);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 95% interval for the slope
  int dropped = 0;                  // nonpositive samples removed
};

// OLS of log|v| on log x.  Needs >= 8 usable samples spanning >= 2 decades.
SlopeFit slope_loglog(const std::vector<double>& x,
                      const std::vector<double>& v);

struct ThreeTermFit {
  double a = 0.0, b = 0.0, c = 0.0;
};

// Least squares for f(x) ~ a x log^2 x + b x log x + c x, solved in the
// x-normalized form (f/x against {log^2 x, log x, 1}) so geometric grids
// weight every decade equally.  The samples should span >= 2 decades for
// the basis to be well separated.
ThreeTermFit fit_xlog2(const std::vector<double>& x,
                       const std::vector<double>& f);

}  // namespace divlab
