#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "constants.hpp"
#include "divisor_table.hpp"
#include "errors.hpp"
#include "mainterm.hpp"
#include "mellin.hpp"
#include "oracles.hpp"
#include "profile.hpp"

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
double a_const() {
  static const double a =
      const_B_identity().value / (6.0 * std::numbers::pi * std::numbers::pi);
  return a;
}

// residue estimate of K about its pole at p: averaging (s-p)K(s) over the
// four points s = p + eps i^m on the circle |s-p| = eps cancels the
// regular part of the Laurent series to O(eps^4)
template <typename KFn>
double residue_estimate(const KFn& kfn, double p, double eps) {
  std::complex<double> acc = 0.0;
  for (int m = 0; m < 4; ++m) {
    const std::complex<double> w =
        eps * std::polar(1.0, m * std::numbers::pi / 2.0);
    acc += w * kfn(p + w).value;
  }
  return acc.real() / 4.0;
}
}  // namespace

TEST_CASE("direct Mellin value matches quadrature on a short range") {
  ErrorScan scan(table2(), main_term_poly(2));
  const std::complex<double> s(2.0, 0.7);
  const double x = 64.0;
  const MellinValue mv = mellin_K_direct(scan, s, x);
  // at this tiny cutoff the tail model is the single-term c x^{3/2};
  // reconstruct the completion and compare the truncated part
  const double i2x = scan.integral_pow(1.0, x, 2);
  const double c = i2x / std::pow(x, 1.5);
  const std::complex<double> completion =
      s * c * std::exp((1.5 - s) * std::log(x)) / (s - 1.5) -
      i2x * std::exp(-s * std::log(x));
  std::complex<double> want;
  for (int n = 1; n < 64; ++n) {
    const auto f_re = [&](double u) {
      const double d = scan.delta(u);
      return d * d * std::pow(u, -s.real()) * std::cos(s.imag() * std::log(u));
    };
    const auto f_im = [&](double u) {
      const double d = scan.delta(u);
      return -d * d * std::pow(u, -s.real()) * std::sin(s.imag() * std::log(u));
    };
    want += std::complex<double>(oracle::integrate(f_re, n, n + 1.0, 1e-12),
                                 oracle::integrate(f_im, n, n + 1.0, 1e-12));
  }
  CHECK(std::abs(mv.value - completion - want) < 1e-8);
  CHECK(mv.k == 2);
  CHECK(mv.method == MellinMethod::kDirect);
}

TEST_CASE("direct Mellin stabilizes under doubling of the cutoff") {
  ErrorScan scan(table2(), main_term_poly(2));
  const std::complex<double> s(2.0, 0.0);
  const MellinValue a = mellin_K_direct(scan, s, 100000.0);
  const MellinValue b = mellin_K_direct(scan, s, 200000.0);
  CHECK(a.value.real() > 0.0);  // positive integrand
  CHECK(std::abs(a.value - b.value) <=
        a.truncation_budget + b.truncation_budget);

  ErrorScan scan3(table3(), main_term_poly(3));
  const MellinValue c = mellin_K_direct(scan3, s, 200000.0);
  CHECK(std::isfinite(c.value.real()));
  CHECK(c.truncation_budget > 0.0);
  CHECK(c.truncation_budget < std::abs(c.value));

  CHECK_THROWS_AS(mellin_K_direct(scan, {1.6, 0.0}, 100000.0), DomainError);
  CHECK_THROWS_AS(mellin_K_direct(scan3, {1.8, 0.0}, 100000.0), DomainError);
  CHECK_THROWS_AS(mellin_K_direct(scan, {2.0, 0.0}, 1e9), DomainError);
}

TEST_CASE("continuation overlaps the direct evaluation") {
  ErrorScan scan(table2(), main_term_poly(2));
  const double x = 200000.0;
  const std::complex<double> s(1.8, 0.0);
  const MellinValue direct = mellin_K_direct(scan, s, x);
  const MellinValue cont = mellin_K2_continued(scan, s, a_const(), x);
  CHECK(cont.method == MellinMethod::kContinuedK2);
  CHECK(std::abs(direct.value - cont.value) <= 2e-3 * std::abs(cont.value));

  // pole residue (s - 3/2) K_2(s) -> 3A/2, symmetric two-point estimate
  const double eps = 1e-2;
  const double res = residue_estimate(
      [&](std::complex<double> sv) {
        return mellin_K2_continued(scan, sv, a_const(), x);
      },
      1.5, eps);
  CHECK(std::fabs(res - 1.5 * a_const()) < 1e-3 * 1.5 * a_const());

  CHECK_THROWS_AS(mellin_K2_continued(scan, {1.5 + 5e-4, 0.0}, a_const(), x),
                  DomainError);
  CHECK_THROWS_AS(mellin_K2_continued(scan, {0.9, 0.0}, a_const(), x),
                  DomainError);
}

TEST_CASE("k=3 continuation residue and domain guards") {
  ErrorScan scan3(table3(), main_term_poly(3));
  const double x = 200000.0;
  const double c3 = const_C3_product();
  const std::complex<double> s(2.0, 0.0);
  const MellinValue direct = mellin_K_direct(scan3, s, x);
  const MellinValue cont = mellin_K3_continued(scan3, s, c3, x);
  CHECK(cont.method == MellinMethod::kContinuedK3);
  CHECK(std::abs(direct.value - cont.value) <=
        direct.truncation_budget + cont.truncation_budget);

  const double eps = 1e-2;
  const double res = residue_estimate(
      [&](std::complex<double> sv) {
        return mellin_K3_continued(scan3, sv, c3, x);
      },
      5.0 / 3.0, eps);
  CHECK(std::fabs(res - 5.0 / 3.0 * c3) < 1e-2 * 5.0 / 3.0 * c3);

  CHECK_THROWS_AS(mellin_K3_continued(scan3, {1.5, 0.0}, c3, x), DomainError);
  ErrorScan scan2(table2(), main_term_poly(2));
  CHECK_THROWS_AS(mellin_K3_continued(scan2, s, c3, x), DomainError);
}

TEST_CASE("Laplace transform check against direct quadrature") {
  ErrorScan scan(table2(), main_term_poly(2));
  const double b_const = const_B_identity().value;
  const double big_t = 1000.0;
  const LaplaceCheck lc = laplace_check(scan, big_t, b_const);
  CHECK(lc.lhs > 0.0);
  CHECK(lc.leading == doctest::Approx(b_const / 8.0 *
                                      std::pow(big_t / std::numbers::pi, 1.5)));
  CHECK(lc.residual == doctest::Approx(lc.lhs - lc.leading));
  // the log^2 correction is ~ -4% at T = 1000, lower orders add a bit
  CHECK(lc.lhs / lc.leading > 0.8);
  CHECK(lc.lhs / lc.leading < 1.1);

  // oracle: quadrature of Delta^2 e^{-x/T} over the cutoff for small T
  const double small_t = 30.0;
  const LaplaceCheck sc = laplace_check(scan, small_t, b_const);
  double want = 0.0;
  {
    const MainTermModel m = main_term_poly(2);
    const auto f0 = [&](double u) {
      const double d = -m.main_term(std::max(u, 1e-30));
      return d * d * std::exp(-u / small_t);
    };
    want += oracle::integrate(f0, 0.0, 1.0, 1e-11);
    for (int n = 1; n < 33 * 30; ++n) {
      const auto f = [&](double u) {
        const double d = scan.delta(u);
        return d * d * std::exp(-u / small_t);
      };
      want += oracle::integrate(f, n, n + 1.0, 1e-11);
    }
  }
  CHECK(sc.lhs == doctest::Approx(want).epsilon(1e-7));

  CHECK_THROWS_AS(laplace_check(scan, 5.0, b_const), DomainError);
  CHECK_THROWS_AS(laplace_check(scan, 50000.0, b_const), DomainError);
}

TEST_CASE("Laplace residual fit recovers a synthetic log^2 coefficient") {
  std::vector<double> ts, rs;
  for (double t : {1e3, 1e4, 1e5}) {
    ts.push_back(t);
    rs.push_back(-0.0253303 * t * std::log(t) * std::log(t) +
                 0.4 * t * std::log(t) - 2.0 * t);
  }
  CHECK(laplace_fit_a1(ts, rs) == doctest::Approx(-0.0253303).epsilon(1e-9));
  CHECK_THROWS_AS(laplace_fit_a1({1.0, 2.0}, {1.0, 2.0}), DomainError);
}

TEST_CASE("Parseval partial integrals are monotone and bounded") {
  const DivisorTable small = DivisorTable::build(2, 20000);
  ErrorScan scan(small, main_term_poly(2));
  const ParsevalPartial pp = parseval_partial(scan, 1.8, 50.0, 251);
  REQUIRE(pp.t.size() == 251);
  for (std::size_t i = 1; i < pp.partial.size(); ++i)
    CHECK(pp.partial[i] >= pp.partial[i - 1]);
  CHECK(pp.partial.back() <= pp.bound);
  CHECK(pp.bound > 0.0);

  // larger sigma: the t-mass beyond T = 50 is a smaller fraction
  const ParsevalPartial fast = parseval_partial(scan, 2.5, 50.0, 251);
  const double frac_18 = pp.partial.back() / pp.bound;
  const double frac_25 = fast.partial.back() / fast.bound;
  CHECK(frac_25 > frac_18);

  CHECK_THROWS_AS(parseval_partial(scan, 1.5, 50.0, 10), DomainError);
}
