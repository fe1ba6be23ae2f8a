#pragma once

#include "profile.hpp"

namespace divlab {

// (1/2pi) int_{-T}^{T} y^{c+it}/(c+it) dt.  As T grows this tends to the
// step values 1 (y > 1), 1/2 (y = 1), 0 (y < 1).
double perron_kernel(double y, double c, double T);

struct PerronDelta {
  double approx = 0.0;  // truncated line integral plus the constant term
  double exact = 0.0;   // error term from the sieved table
  std::size_t panels = 0;
};

// Truncated contour inversion of the divisor error term at non-integer x:
//   approx = (1/pi) Re int_0^T zeta^k(c+it) x^{c+it}/(c+it) dt - zeta^k(0).
// c should exceed the mean-square abscissa for the chosen k (ledger eta_k).
PerronDelta perron_delta(const ErrorScan& scan, double x, double c, double T);

}  // namespace divlab
