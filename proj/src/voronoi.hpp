#pragma once

#include <cstdint>
#include <vector>

#include "profile.hpp"

namespace divlab {

enum class SeriesVariant { kIntegral14, kDelta3_15, kGeneral18 };

struct SeriesValue {
  SeriesVariant variant = SeriesVariant::kGeneral18;
  int k = 0;
  double x = 0.0;
  std::uint64_t terms = 0;
  double value = 0.0;
  // Bound on what the truncation discards.  For kIntegral14 it comes from
  // partial summation against the divisor summatory function with a
  // measured sup of |D(t) - t log t - (2 gamma - 1) t - 1/4| / sqrt(t);
  // for the Delta_k expansions it is the heuristic budget
  // c x^eps (1 + x^{(k-1)/k} N^{-1/k} + (xN)^{1/2 - 1/k}).
  double tail_bound = 0.0;
  bool heuristic = false;
};

// Truncated explicit series for int_1^x Delta(u) du up to an additive
// constant: the x^{3/4} sine series plus the x^{1/4} cosine series, m terms
// each.  Both series converge absolutely.  Requires m <= table limit.
SeriesValue voronoi_integral_delta(const DivisorTable& d2, double x,
                                   std::uint64_t m);

// nth term of the x^{3/4} sine series above (for envelope / sign tests).
double integral14_sine_term(double x, std::uint64_t n, std::uint64_t dn);

// Least-squares estimate of the additive constant the series omits:
// mean of I1(x) - series(x) over the grid.
double fit_integral14_c1(const ErrorScan& scan2, const std::vector<double>& xs,
                         std::uint64_t m);

// Truncated expansion of Delta_3(x) valid for big_x <= x <= 2 big_x with
// n_terms = big_x^2 by default (n_override picks a shorter sum).  The
// terms coincide with the k = 3 case of voronoi_delta_k.
SeriesValue voronoi_delta3(const DivisorTable& d3, double x, double big_x,
                           std::uint64_t n_override = 0);

// Truncated expansion of Delta_k(x): amplitude
// x^{(k-1)/(2k)} n^{-(k+1)/(2k)} / (pi sqrt k), phase
// 2 k pi (xn)^{1/k} + (k-3) pi / 4.  Phases are reduced modulo 2 pi in
// doubled precision before the cosine is taken.
SeriesValue voronoi_delta_k(const DivisorTable& table, double x,
                            std::uint64_t n_terms);

struct DerivativeTestCheck {
  double lhs = 0.0;  // |int_X^{2X} Delta_3|, panel-exact
  double rhs = 0.0;  // c X^{1 + eps}
  double c = 0.0;    // measured over the doubling sequence 2, 4, ..., X
  static constexpr double kEps = 0.05;
};

// Empirical first-derivative-test bound for the integrated Delta_3.
DerivativeTestCheck first_derivative_test_check(const ErrorScan& scan3,
                                                double big_x);

}  // namespace divlab
