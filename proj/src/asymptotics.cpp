#include "asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"

namespace divlab {
namespace {

double remainder_exponent(int k) {
  if (k == 2) return 1.5;
  if (k == 3) return 5.0 / 3.0;
  throw DomainError("extract_remainder: k must be 2 or 3");
}

double envelope_shape(int k, double x) {
  if (k == 2) {
    const double l = std::log(x);
    return x * l * l * l * l;
  }
  return std::pow(x, 14.0 / 9.0 + 0.05);
}

}  // namespace

AsymptoticConstants asymptotic_constants(const DivisorTable& d2,
                                         const DivisorTable& d3) {
  const ConstApprox ident = const_B_identity();
  const ConstApprox direct = const_B_direct(d2);
  if (std::fabs(ident.value - direct.value) > ident.budget + direct.budget)
    throw NumericalError("asymptotic_constants: B brackets do not overlap");

  const ConstApprox c3 = const_C3_direct(d3);
  const double c3p = const_C3_product();
  if (std::fabs(c3.value - c3p) > c3.budget + 1e-4 * c3p)
    throw NumericalError("asymptotic_constants: C3 routes disagree");

  const double pi2 = std::numbers::pi * std::numbers::pi;
  AsymptoticConstants out;
  out.b = ident.value;
  out.b_budget = ident.budget;
  out.a = ident.value / (6.0 * pi2);
  out.c3 = c3.value;
  out.c3_budget = c3.budget;
  out.a1 = -1.0 / (4.0 * pi2);
  return out;
}

RemainderProfile extract_remainder(const ErrorScan& scan, const GridSpec& grid,
                                   double main_const) {
  const double p = remainder_exponent(scan.k());
  if (grid.stop > static_cast<double>(scan.table().limit()))
    throw CapacityError("extract_remainder: grid exceeds the sieve limit");
  const ErrorTermProfile prof = scan.profile(grid, false);
  RemainderProfile out;
  out.k = scan.k();
  out.main_const = main_const;
  out.x = prof.x;
  out.rem.resize(prof.x.size());
  for (std::size_t i = 0; i < prof.x.size(); ++i) {
    out.rem[i] = prof.i2[i] - main_const * std::pow(prof.x[i], p);
    // the envelope shape vanishes at x = 1, so the sup starts at 2
    if (prof.x[i] >= 2.0)
      out.envelope_const =
          std::max(out.envelope_const,
                   std::fabs(out.rem[i]) / envelope_shape(out.k, prof.x[i]));
  }
  return out;
}

ThreeTermFit fit_F(const RemainderProfile& prof) {
  return fit_xlog2(prof.x, prof.rem);
}

ContradictionReport contradiction_demo(const ErrorScan& scan2, double a_const,
                                       double alpha,
                                       const std::vector<double>& xlist) {
  if (scan2.k() != 2) throw DomainError("contradiction_demo: needs k = 2");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("contradiction_demo: 0 < alpha < 1");
  ContradictionReport rep;
  rep.alpha = alpha;
  rep.rhs_exponent = 2.0 * alpha / 3.0;
  rep.signal = rep.lhs_exponent > rep.rhs_exponent;
  const double limit = static_cast<double>(scan2.table().limit());
  for (double x : xlist) {
    if (x < 4.0) throw DomainError("contradiction_demo: X >= 4");
    ContradictionRow row;
    row.x = x;
    row.h = std::clamp(std::pow(x, alpha / 3.0), 1.0, x - 1.0);
    if (x + row.h > limit)
      throw CapacityError("contradiction_demo: X + H exceeds the sieve limit");
    const double d = scan2.delta(x);
    row.delta2 = d * d;
    row.sqrt_x = std::sqrt(x);
    const double l = std::log(x);
    // F(y) = I2(y) - A y^{3/2}; the main-term parts of the window
    // difference largely cancel, leaving the measured fluctuation
    const double f_hi = scan2.integral_pow(1.0, x + row.h, 2) -
                        a_const * std::pow(x + row.h, 1.5);
    const double f_lo = scan2.integral_pow(1.0, x - row.h, 2) -
                        a_const * std::pow(x - row.h, 1.5);
    row.f_diff_term = std::fabs(f_hi - f_lo) / row.h;
    row.smooth_term = row.h * row.h * l * l;
    row.hyp_bound = std::pow(x, rep.rhs_exponent) * l * l;
    row.violated = row.sqrt_x > row.hyp_bound;
    rep.rows.push_back(row);
  }
  return rep;
}

double find_large_delta(const ErrorScan& scan2, double lo, double hi) {
  const DivisorTable& table = scan2.table();
  if (lo < 2.0 || hi > static_cast<double>(table.limit()) || lo >= hi)
    throw DomainError("find_large_delta: need 2 <= lo < hi <= limit");
  const MainTermModel& model = scan2.model();
  const std::uint64_t nlo = static_cast<std::uint64_t>(std::ceil(lo));
  const std::uint64_t nhi = static_cast<std::uint64_t>(std::floor(hi));
  double run = 0.0;
  for (std::uint64_t n = 1; n < nlo; ++n)
    run += static_cast<double>(table.value(n));
  double best = -1.0, best_x = lo;
  for (std::uint64_t n = nlo; n <= nhi; ++n) {
    const double dn = static_cast<double>(table.value(n));
    run += dn;
    const double x = static_cast<double>(n);
    // both one-sided limits: Delta(n -+ 0) = Delta'(n) -+ d(n)/2
    const double primed = run - 0.5 * dn - model.main_term(x);
    const double cand = (std::fabs(primed) + 0.5 * dn) * std::pow(x, -0.25);
    if (cand > best) {
      best = cand;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace divlab
