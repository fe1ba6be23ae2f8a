#pragma once

#include <complex>
#include <vector>

#include "profile.hpp"

namespace divlab {

enum class MellinMethod { kDirect, kContinuedK2, kContinuedK3 };

struct MellinValue {
  int k = 0;
  std::complex<double> s;
  std::complex<double> value;
  MellinMethod method = MellinMethod::kDirect;
  double truncation_budget = 0.0;
};

// K_k(s) = int_1^inf Delta_k^2(x) x^{-s} dx: panel-exact integral up to
// floor(xmax) plus the tail main term p/(s-p) I2(X) X^{-s} obtained by
// integrating the tail by parts against the measured mean square (p = 3/2
// or 5/3).  Requires Re s >= p + 1/4; the budget bounds the remainder the
// completion cannot see (heuristic constants).
MellinValue mellin_K_direct(const ErrorScan& scan, std::complex<double> s,
                            double xmax);

// Continuation K_2(s) = 3A/(2s-3) + A + s int_1^inf F(x) x^{-s-1} dx with
// F(x) = I2(x) - A x^{3/2} (so F(1) = -A and the boundary term is A).
// Valid for Re s > 1 away from the pole at 3/2 (delta = 1e-3 exclusion);
// the F-integral is truncated at floor(xmax) with an x log^4 x tail model
// and a measured constant.
MellinValue mellin_K2_continued(const ErrorScan& scan2, std::complex<double> s,
                                double a_const, double xmax);

// K_3(s) = 5C/(3s-5) + C + s int_1^inf R(x) x^{-s-1} dx with
// R(x) = I2(x) - C x^{5/3}; valid for Re s > 14/9 off the pole at 5/3.
// Tail model x^{14/9} with a measured constant.
MellinValue mellin_K3_continued(const ErrorScan& scan3, std::complex<double> s,
                                double c3_const, double xmax);

struct LaplaceCheck {
  double lhs = 0.0;       // int_0^inf Delta^2(x) e^{-x/T} dx
  double leading = 0.0;   // (B/8)(T/pi)^{3/2}
  double residual = 0.0;  // lhs - leading, expected ~ (A1 log^2 T + ...) T
};

// Exponentially weighted mean square; the cutoff 33T keeps the discarded
// tail below 1e-12 of the leading term, and must fit inside the sieve.
LaplaceCheck laplace_check(const ErrorScan& scan2, double big_t,
                           double b_const);

// Coefficient of T log^2 T in a least-squares fit of residuals against
// the basis {T log^2 T, T log T, T}.
double laplace_fit_a1(const std::vector<double>& big_t,
                      const std::vector<double>& residual);

struct ParsevalPartial {
  std::vector<double> t;        // increasing upper limits
  std::vector<double> partial;  // (1/2pi) int_{-T}^{T} |K_2(sigma+it)|^2 dt
  double bound = 0.0;  // int_1^inf Delta^4 x^{1-2 sigma} dx estimate
};

// Parseval partial integrals on a uniform t-grid (trapezoid); sigma >= 1.6.
ParsevalPartial parseval_partial(const ErrorScan& scan2, double sigma,
                                 double tmax, int points);

}  // namespace divlab
