#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "divisor_table.hpp"
#include "errors.hpp"
#include "fitting.hpp"
#include "mainterm.hpp"
#include "parallel.hpp"
#include "profile.hpp"
#include "voronoi.hpp"

using namespace divlab;

namespace {
const DivisorTable& table2() {
  static const DivisorTable t = DivisorTable::build(2, 200000);
  return t;
}
const DivisorTable& table3() {
  static const DivisorTable t = DivisorTable::build(3, 200000);
  return t;
}
}  // namespace

TEST_CASE("integral series first term and envelope") {
  // 4 pi sqrt(x) - pi/4 = pi/2 + 4 pi at x = 1.1875^2: sine factor is 1
  const double x = 1.1875 * 1.1875;
  const double amp = std::pow(x, 0.75) /
                     (2.0 * std::numbers::sqrt2 * std::numbers::pi *
                      std::numbers::pi);
  CHECK(integral14_sine_term(x, 1, 1) == doctest::Approx(amp).epsilon(1e-12));

  // term magnitude never exceeds its envelope
  for (std::uint64_t n : {1ull, 2ull, 17ull, 360ull, 9999ull}) {
    const std::uint64_t dn = table2().value(n);
    const double env =
        amp * static_cast<double>(dn) * std::pow(static_cast<double>(n), -1.25);
    CHECK(std::fabs(integral14_sine_term(x, n, dn)) <= env * (1.0 + 1e-12));
  }
}

TEST_CASE("integral series attains both signs") {
  int pos = 0, neg = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 1000.0 + 9.0 * i;
    double s = 0.0;
    for (std::uint64_t n = 1; n <= 500; ++n)
      s += integral14_sine_term(x, n, table2().value(n));
    if (s > 0.0) ++pos;
    if (s < 0.0) ++neg;
  }
  CHECK(pos > 0);
  CHECK(neg > 0);
}

TEST_CASE("integral series two-point constancy improves with M") {
  ErrorScan scan(table2(), main_term_poly(2));
  const double i1a = scan.integral_pow(1.0, 1000.0, 1);
  const double i1b = scan.integral_pow(1.0, 10000.0, 1);
  auto twopoint = [&](std::uint64_t m) {
    const SeriesValue a = voronoi_integral_delta(table2(), 1000.0, m);
    const SeriesValue b = voronoi_integral_delta(table2(), 10000.0, m);
    CHECK_FALSE(a.heuristic);
    CHECK(a.tail_bound > 0.0);
    return (b.value - a.value) - (i1b - i1a);
  };
  const double d1 = twopoint(25000);
  const double d2 = twopoint(100000);
  const double d3 = twopoint(200000);
  // the additive constant cancels; the residual is pure truncation tail
  // and shrinks like M^{-1/2} (measured floor pinned for reproducibility)
  CHECK(std::fabs(d2) < std::fabs(d1));
  CHECK(std::fabs(d3) < std::fabs(d2));
  CHECK(d2 == doctest::Approx(0.31724855911980399).epsilon(1e-6));

  // the absolute-convergence bound dominates trivially
  const SeriesValue a = voronoi_integral_delta(table2(), 1000.0, 100000);
  const SeriesValue b = voronoi_integral_delta(table2(), 10000.0, 100000);
  CHECK(std::fabs(d2) <= a.tail_bound + b.tail_bound);

  const double c1 = fit_integral14_c1(scan, {2000.0, 3000.0, 5000.0}, 100000);
  CHECK(std::isfinite(c1));
  CHECK(std::fabs(c1) < 1.0);
  CHECK_THROWS_AS(fit_integral14_c1(scan, {}, 100), DomainError);

  CHECK_THROWS_AS(voronoi_integral_delta(table2(), 0.5, 100), DomainError);
  CHECK_THROWS_AS(voronoi_integral_delta(table2(), 10.0, 300000),
                  CapacityError);
  CHECK_THROWS_AS(voronoi_integral_delta(table3(), 10.0, 100), DomainError);
}

TEST_CASE("Delta_k expansion matches the exact error term within budget") {
  ErrorScan scan(table2(), main_term_poly(2));
  const SeriesValue v = voronoi_delta_k(table2(), 5000.5, 200000);
  CHECK(v.variant == SeriesVariant::kGeneral18);
  CHECK(v.heuristic);
  CHECK(std::fabs(v.value - scan.delta(5000.5)) <= v.tail_bound);

  CHECK_THROWS_AS(voronoi_delta_k(table2(), 0.5, 100), DomainError);
  CHECK_THROWS_AS(voronoi_delta_k(table2(), 10.0, 0), DomainError);
  CHECK_THROWS_AS(voronoi_delta_k(table2(), 10.0, 300000), CapacityError);
}

TEST_CASE("Delta_3 expansion: agreement, term identity, N doubling") {
  ErrorScan scan3(table3(), main_term_poly(3));
  for (double x : {400.0, 500.5, 650.0, 799.5}) {
    const SeriesValue v = voronoi_delta3(table3(), x, 400.0);
    CHECK(v.variant == SeriesVariant::kDelta3_15);
    CHECK(v.terms == 160000);
    CHECK(std::fabs(v.value - scan3.delta(x)) <= v.tail_bound);
  }

  // the k = 3 phase offset vanishes, so the two expansions coincide
  // term-for-term and hence bit-for-bit
  const SeriesValue a = voronoi_delta3(table3(), 500.5, 400.0, 120000);
  const SeriesValue b = voronoi_delta_k(table3(), 500.5, 120000);
  CHECK(a.value == b.value);

  // pushing N past X^2 moves the value by less than the recorded budget
  const SeriesValue base = voronoi_delta3(table3(), 500.5, 400.0);
  const SeriesValue more = voronoi_delta3(table3(), 500.5, 400.0, 200000);
  CHECK(std::fabs(more.value - base.value) <= base.tail_bound);

  CHECK_THROWS_AS(voronoi_delta3(table3(), 900.0, 400.0), DomainError);
  CHECK_THROWS_AS(voronoi_delta3(table3(), 300.0, 400.0), DomainError);
  CHECK_THROWS_AS(voronoi_delta3(table3(), 600.0, 500.0), CapacityError);
  CHECK_THROWS_AS(voronoi_delta3(table2(), 500.5, 400.0), DomainError);
}

TEST_CASE("first derivative test bound for the integrated Delta_3") {
  ErrorScan scan3(table3(), main_term_poly(3));
  const DerivativeTestCheck dt = first_derivative_test_check(scan3, 1000.0);
  CHECK(dt.lhs == doctest::Approx(138.72294832137703).epsilon(1e-12));
  CHECK(dt.lhs <= dt.rhs);
  CHECK(dt.c < 1.0);

  // log-log slope of |int_X^{2X} Delta_3| along a doubling sequence
  std::vector<double> lx, ly;
  for (double x = 100.0; x <= 12800.0; x *= 2.0) {
    const double l =
        std::fabs(scan3.integral_pow(x, 2.0 * x, 1));
    lx.push_back(std::log(x));
    ly.push_back(std::log(std::max(l, 1e-3)));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i]; sy += ly[i]; sxx += lx[i] * lx[i]; sxy += lx[i] * ly[i];
  }
  const double n = static_cast<double>(lx.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope <= 1.1);

  // trivial sanity point
  const DerivativeTestCheck tiny = first_derivative_test_check(scan3, 2.0);
  CHECK(tiny.lhs ==
        doctest::Approx(std::fabs(scan3.integral_pow(2.0, 4.0, 1))));

  CHECK_THROWS_AS(first_derivative_test_check(scan3, 1.0), DomainError);
  CHECK_THROWS_AS(first_derivative_test_check(scan3, 150000.0), CapacityError);
  ErrorScan scan2(table2(), main_term_poly(2));
  CHECK_THROWS_AS(first_derivative_test_check(scan2, 100.0), DomainError);
}

TEST_CASE("series sums are identical across worker counts") {
  const int saved = worker_count();
  double vals[3];
  int i = 0;
  for (int w : {1, 4, 8}) {
    set_worker_count(w);
    vals[i++] = voronoi_delta_k(table2(), 5000.5, 200000).value;
  }
  set_worker_count(saved);
  CHECK(vals[0] == vals[1]);
  CHECK(vals[0] == vals[2]);
}
