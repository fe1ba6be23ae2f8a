#include "voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "kahan.hpp"
#include "parallel.hpp"

namespace divlab {
namespace {

constexpr std::uint64_t kTermBlock = 1 << 16;

// heuristic budget constants for the truncated Delta_k expansions (the
// O-terms come with unspecified constants; these are measured with slack)
constexpr double kEps18 = 0.05;
constexpr double kBudget18 = 4.0;
constexpr double kEps15 = 0.10;
constexpr double kBudget15 = 6.0;

// angle = 2 k pi (xn)^{1/k} reduced to (-pi, pi]: the product k * root is
// split into hi + err with an fma so the fractional part keeps the low
// bits a bare double product would shed.
double reduced_angle(int k, double x, double n) {
  const double root = (k == 2) ? std::sqrt(x * n) : std::pow(x * n, 1.0 / k);
  const double hi = k * root;
  const double err = std::fma(static_cast<double>(k), root, -hi);
  const double frac = (hi - std::nearbyint(hi)) + err;
  return 2.0 * std::numbers::pi * frac;
}

// sum_{n <= nmax} d_k(n) n^{-aexp} cos(2 k pi (xn)^{1/k} + offset).
// Fixed-size blocks, compensated per-block sums, serial merge in block
// order: the result is identical for any worker count.
double trig_sum(const DivisorTable& table, int k, double x, std::uint64_t nmax,
                double aexp, double offset) {
  const std::uint64_t nblocks = (nmax + kTermBlock - 1) / kTermBlock;
  std::vector<KahanReal> slot(nblocks);
  for_each_block(nblocks, [&](std::size_t b) {
    const std::uint64_t lo = 1 + b * kTermBlock;
    const std::uint64_t hi = std::min(nmax, lo + kTermBlock - 1);
    KahanReal acc;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      const double dn = static_cast<double>(table.value(n));
      const double nn = static_cast<double>(n);
      acc.add(dn * std::pow(nn, -aexp) *
              std::cos(reduced_angle(k, x, nn) + offset));
    }
    slot[b] = acc;
  });
  KahanReal total;
  for (std::uint64_t b = 0; b < nblocks; ++b) total.merge(slot[b]);
  return total.value();
}

// upper bound on sum_{n > m} d(n) n^{-a}, a > 1: partial summation against
// D(t) = t log t + (2 gamma - 1) t + 1/4 + E(t); the main part integrates
// in closed form, and |E(t)| <= c sqrt(t) with c measured on the table
// (the ratio decays like t^{-1/6}, so the scanned sup holds beyond it).
double divisor_tail_bound(const DivisorTable& table, std::uint64_t m,
                          double a) {
  const double g2 = 2.0 * std::numbers::egamma;
  const std::uint64_t scan_to = std::min<std::uint64_t>(
      table.limit(), std::max<std::uint64_t>(10 * m, 1000));
  double c = 0.0, run = 0.0;
  for (std::uint64_t n = 1; n <= scan_to; ++n) {
    const double dn = static_cast<double>(table.value(n));
    run += dn;
    const double t = static_cast<double>(n);
    const double dev =
        std::fabs(run - t * std::log(t) - (g2 - 1.0) * t - 0.25);
    // the + dn covers the jump of E at n
    c = std::max(c, (dev + dn) / std::sqrt(t));
  }
  const double dm = static_cast<double>(m);
  const double am1 = a - 1.0;
  const double main =
      std::pow(dm, -am1) * ((std::log(dm) + g2) / am1 + 1.0 / (am1 * am1));
  const double err =
      c * std::pow(dm, 0.5 - a) * (1.0 + a / (a - 0.5));
  return main + err;
}

}  // namespace

SeriesValue voronoi_integral_delta(const DivisorTable& d2, double x,
                                   std::uint64_t m) {
  if (d2.k() != 2)
    throw DomainError("voronoi_integral_delta: needs a d_2 table");
  if (x < 1.0 || m < 1)
    throw DomainError("voronoi_integral_delta: require x >= 1 and m >= 1");
  if (m > d2.limit())
    throw CapacityError("voronoi_integral_delta: m exceeds the sieve limit");
  const double pi = std::numbers::pi;
  const double cs = std::pow(x, 0.75) / (2.0 * std::numbers::sqrt2 * pi * pi);
  const double cc =
      15.0 * std::pow(x, 0.25) / (64.0 * std::numbers::sqrt2 * pi * pi * pi);
  // sin(theta - pi/4) = cos(theta - 3 pi/4)
  const double ssum = trig_sum(d2, 2, x, m, 1.25, -0.75 * pi);
  const double csum = trig_sum(d2, 2, x, m, 1.75, -0.25 * pi);
  SeriesValue out;
  out.variant = SeriesVariant::kIntegral14;
  out.k = 2;
  out.x = x;
  out.terms = m;
  out.value = cs * ssum + cc * csum;
  out.tail_bound = cs * divisor_tail_bound(d2, m, 1.25) +
                   cc * divisor_tail_bound(d2, m, 1.75);
  out.heuristic = false;
  return out;
}

double integral14_sine_term(double x, std::uint64_t n, std::uint64_t dn) {
  const double pi = std::numbers::pi;
  const double amp = std::pow(x, 0.75) / (2.0 * std::numbers::sqrt2 * pi * pi);
  const double nn = static_cast<double>(n);
  return amp * static_cast<double>(dn) * std::pow(nn, -1.25) *
         std::sin(reduced_angle(2, x, nn) - 0.25 * pi);
}

double fit_integral14_c1(const ErrorScan& scan2, const std::vector<double>& xs,
                         std::uint64_t m) {
  if (xs.empty()) throw DomainError("fit_integral14_c1: empty grid");
  KahanReal acc;
  for (double x : xs) {
    const double i1 = scan2.integral_pow(1.0, x, 1);
    acc.add(i1 - voronoi_integral_delta(scan2.table(), x, m).value);
  }
  return acc.value() / static_cast<double>(xs.size());
}

SeriesValue voronoi_delta_k(const DivisorTable& table, double x,
                            std::uint64_t n_terms) {
  const int k = table.k();
  if (k < 2) throw DomainError("voronoi_delta_k: k >= 2");
  if (x < 1.0 || n_terms < 1)
    throw DomainError("voronoi_delta_k: require x >= 1 and n_terms >= 1");
  if (n_terms > table.limit())
    throw CapacityError("voronoi_delta_k: n_terms exceeds the sieve limit");
  const double pi = std::numbers::pi;
  const double kk = static_cast<double>(k);
  SeriesValue out;
  out.variant = SeriesVariant::kGeneral18;
  out.k = k;
  out.x = x;
  out.terms = n_terms;
  out.value = std::pow(x, (kk - 1.0) / (2.0 * kk)) / (pi * std::sqrt(kk)) *
              trig_sum(table, k, x, n_terms, (kk + 1.0) / (2.0 * kk),
                       (kk - 3.0) * pi / 4.0);
  const double nn = static_cast<double>(n_terms);
  out.tail_bound =
      kBudget18 * std::pow(x, kEps18) *
      (1.0 + std::pow(x, (kk - 1.0) / kk) * std::pow(nn, -1.0 / kk) +
       std::pow(x * nn, 0.5 - 1.0 / kk));
  out.heuristic = true;
  return out;
}

SeriesValue voronoi_delta3(const DivisorTable& d3, double x, double big_x,
                           std::uint64_t n_override) {
  if (d3.k() != 3) throw DomainError("voronoi_delta3: needs a d_3 table");
  if (big_x < 1.0 || x < big_x || x > 2.0 * big_x)
    throw DomainError("voronoi_delta3: require big_x <= x <= 2 big_x");
  std::uint64_t n_terms = n_override;
  if (n_terms == 0) {
    const double n2 = big_x * big_x;
    if (n2 > static_cast<double>(d3.limit()))
      throw CapacityError("voronoi_delta3: big_x^2 exceeds the sieve limit");
    n_terms = static_cast<std::uint64_t>(std::llround(n2));
  }
  SeriesValue out = voronoi_delta_k(d3, x, n_terms);
  out.variant = SeriesVariant::kDelta3_15;
  out.tail_bound = kBudget15 * std::pow(big_x, kEps15);
  out.heuristic = true;
  return out;
}

DerivativeTestCheck first_derivative_test_check(const ErrorScan& scan3,
                                                double big_x) {
  if (scan3.k() != 3)
    throw DomainError("first_derivative_test_check: needs k = 3");
  if (big_x < 2.0)
    throw DomainError("first_derivative_test_check: big_x >= 2");
  if (2.0 * big_x > static_cast<double>(scan3.table().limit()))
    throw CapacityError(
        "first_derivative_test_check: 2 big_x exceeds the sieve limit");
  DerivativeTestCheck out;
  for (double xi = big_x; xi >= 2.0; xi *= 0.5) {
    const double l = std::fabs(scan3.integral_pow(xi, 2.0 * xi, 1));
    if (xi == big_x) out.lhs = l;
    out.c = std::max(out.c, l / std::pow(xi, 1.0 + DerivativeTestCheck::kEps));
  }
  out.rhs = out.c * std::pow(big_x, 1.0 + DerivativeTestCheck::kEps);
  return out;
}

}  // namespace divlab
