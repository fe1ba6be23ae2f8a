#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "divisor_table.hpp"
#include "errors.hpp"
#include "mainterm.hpp"
#include "oracles.hpp"
#include "panel.hpp"
#include "parallel.hpp"
#include "profile.hpp"
#include "rational.hpp"

using namespace divlab;

namespace {
const DivisorTable& table2() {
  static const DivisorTable t = DivisorTable::build(2, 200000);
  return t;
}
const DivisorTable& table3() {
  static const DivisorTable t = DivisorTable::build(3, 50000);
  return t;
}
}  // namespace

TEST_CASE("divisor table matches direct divisor counts") {
  const auto& t2 = table2();
  const auto& t3 = table3();
  const DivisorTable t4 = DivisorTable::build(4, 2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(t2.value(n) == oracle::dk(2, n));
    CHECK(t3.value(n) == oracle::dk(3, n));
    CHECK(t4.value(n) == oracle::dk(4, n));
  }
}

TEST_CASE("prefix and summatory conventions") {
  const auto& t = table2();
  std::uint64_t run = 0;
  for (std::uint64_t n = 1; n <= 50; ++n) {
    run += t.value(n);
    CHECK(t.prefix(n) == run);
  }
  CHECK(t.summatory(10.0) == doctest::Approx(25.0));  // 27 - d(10)/2
  CHECK(t.summatory(10.0, false) == doctest::Approx(27.0));
  CHECK(t.summatory(10.5) == doctest::Approx(27.0));
  CHECK(t.summatory(1.0) == doctest::Approx(0.5));
}

TEST_CASE("table save/load round trip and corruption detection") {
  const DivisorTable t = DivisorTable::build(3, 1000);
  const std::string path = "divlab_test_table.dktb";
  t.save(path);
  const DivisorTable u = DivisorTable::load(path);
  CHECK(u.k() == 3);
  CHECK(u.limit() == 1000);
  CHECK(u.values() == t.values());

  std::FILE* f = std::fopen(path.c_str(), "r+b");
  REQUIRE(f);
  std::fseek(f, 40, SEEK_SET);
  std::fputc(0x5a, f);
  std::fclose(f);
  CHECK_THROWS_AS(DivisorTable::load(path), IoError);
  std::remove(path.c_str());
}

TEST_CASE("capacity guard") {
  CHECK_THROWS_AS(DivisorTable::build(2, 1u << 20, 1u << 10), CapacityError);
}

TEST_CASE("stieltjes constants") {
  const StieltjesTable st = stieltjes(12);
  CHECK(st.gamma[0] == doctest::Approx(0.5772156649015329).epsilon(1e-13));
  CHECK(st.gamma[1] == doctest::Approx(-0.0728158454836767).epsilon(1e-11));
  CHECK(st.gamma[2] == doctest::Approx(-0.00969036319287).epsilon(1e-9));
  CHECK(st.gamma[3] == doctest::Approx(0.00205383442030).epsilon(1e-8));
  for (int j = 0; j <= 12; ++j) {
    CHECK(st.err_budget[j] > 0.0);
    CHECK(st.err_budget[j] < 1e-10);
  }
  CHECK_THROWS_AS(stieltjes(13), UnsupportedError);
}

TEST_CASE("zeta^k Laurent coefficients against contour extraction") {
  for (int k : {1, 2, 3, 4}) {
    const auto got = zeta_laurent_pow(k, 3);
    const auto want = oracle::zeta_pow_laurent(k, k + 4);
    REQUIRE(got.size() >= static_cast<std::size_t>(k + 3));
    for (int j = 0; j < k + 3; ++j)
      CHECK(got[j] == doctest::Approx(want[j]).epsilon(1e-9));
  }
}

TEST_CASE("main term polynomial equals the residue") {
  for (int k : {1, 2, 3, 4, 5, 6}) {
    const MainTermModel m = main_term_poly(k);
    REQUIRE(static_cast<int>(m.coeffs.size()) == k);
    for (double x : {3.0, 50.0, 1234.5}) {
      const double want = oracle::residue_main_term(k, x);
      CHECK(x * m.poly(std::log(x)) == doctest::Approx(want).epsilon(1e-10));
    }
  }
  // k = 2: P(u) = u + 2*gamma - 1
  const MainTermModel m2 = main_term_poly(2);
  CHECK(m2.coeffs[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m2.coeffs[0] ==
        doctest::Approx(2.0 * 0.5772156649015329 - 1.0).epsilon(1e-12));
  CHECK(m2.zeta_k0 == doctest::Approx(0.25));
}

TEST_CASE("panel expansion reproduces the error term pointwise") {
  const auto& t = table2();
  const MainTermModel m = main_term_poly(2);
  PanelExpander pe(m);
  for (double x0 : {100.0, 5017.0, 199998.0}) {
    const double s = static_cast<double>(
        t.prefix(static_cast<std::uint64_t>(x0)));
    pe.prepare(x0, 1.0, s);
    for (double tt : {0.1, 0.5, 0.93}) {
      const double x = x0 + tt;
      const double want = s - m.main_term(x);
      // the reference itself loses ~x*log(x)*eps to cancellation
      const double tol = 1e-13 + 1e-14 * x * std::log(x + 2.0);
      CHECK(std::fabs(pe.delta().eval(tt) - want) < tol);
    }
  }
}

TEST_CASE("panel integrals against adaptive quadrature") {
  const auto& t = table2();
  const MainTermModel m = main_term_poly(2);
  PanelExpander pe(m);
  const double x0 = 777.0;
  const double s = static_cast<double>(t.prefix(777));
  pe.prepare(x0, 1.0, s);
  auto dfun = [&](double u) { return s - m.main_term(u); };
  for (int p : {1, 2, 3, 4}) {
    const double want = oracle::integrate(
        [&](double u) { return std::pow(dfun(u), p); }, x0, x0 + 1.0);
    CHECK(pe.integral_pow(p) == doctest::Approx(want).epsilon(1e-11));
  }

  const std::complex<double> sc{1.7, 14.2};
  const auto wantc = oracle::integrate_c(
      [&](double u) {
        return dfun(u) * dfun(u) * std::exp(-sc * std::log(u));
      },
      x0, x0 + 1.0);
  const auto gotc = pe.integral_pow_mellin(2, sc);
  CHECK(gotc.real() == doctest::Approx(wantc.real()).epsilon(1e-10));
  CHECK(gotc.imag() == doctest::Approx(wantc.imag()).epsilon(1e-10));

  const double big_t = 2000.0;
  const double wante = oracle::integrate(
      [&](double u) { return dfun(u) * dfun(u) * std::exp(-u / big_t); }, x0,
      x0 + 1.0);
  CHECK(pe.integral_pow_exp(2, big_t) == doctest::Approx(wante).epsilon(1e-11));
}

TEST_CASE("error scan point values") {
  ErrorScan scan(table2(), main_term_poly(2));
  const double g = 0.5772156649015329;
  CHECK(scan.delta(10.0) == doctest::Approx(0.17983577).epsilon(1e-6));
  CHECK(scan.delta(1.0) == doctest::Approx(1.25 - 2.0 * g).epsilon(1e-12));
  // unprimed variant keeps the full last term
  CHECK(scan.delta(10.0, false) - scan.delta(10.0) == doctest::Approx(2.0));
}

TEST_CASE("integral_pow against quadrature across panels") {
  ErrorScan scan(table2(), main_term_poly(2));
  const auto& t = table2();
  const MainTermModel m = main_term_poly(2);
  for (int p : {1, 2, 4}) {
    double want = 0.0;
    // piecewise-smooth reference: integrate each unit panel separately
    for (std::uint64_t n = 1; n < 40; ++n) {
      const double s = static_cast<double>(t.prefix(n));
      want += oracle::integrate(
          [&](double u) { return std::pow(s - m.main_term(u), p); },
          static_cast<double>(n), static_cast<double>(n + 1));
    }
    const double s40 = static_cast<double>(t.prefix(40));
    want += oracle::integrate(
        [&](double u) { return std::pow(s40 - m.main_term(u), p); }, 40.0,
        40.25);
    CHECK(scan.integral_pow(1.0, 40.25, p) ==
          doctest::Approx(want).epsilon(1e-11));
  }
  // fractional endpoints
  const double s7 = static_cast<double>(t.prefix(7));
  const double w = oracle::integrate(
      [&](double u) { return std::pow(s7 - m.main_term(u), 2); }, 7.25, 7.75);
  CHECK(scan.integral_pow(7.25, 7.75, 2) == doctest::Approx(w).epsilon(1e-12));
}

TEST_CASE("profile matches pointwise evaluation and direct integrals") {
  ErrorScan scan(table2(), main_term_poly(2));
  GridSpec grid{3.0, 5000.0, 17, true};
  const ErrorTermProfile p = scan.profile(grid, true, true);
  REQUIRE(p.x.size() == 17);
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    const double x = p.x[i];
    CHECK(p.delta[i] == doctest::Approx(scan.delta(x)).epsilon(1e-9));
    CHECK(p.i1[i] ==
          doctest::Approx(scan.integral_pow(1.0, x, 1)).epsilon(1e-9));
    CHECK(p.i2[i] ==
          doctest::Approx(scan.integral_pow(1.0, x, 2)).epsilon(1e-9));
    CHECK(p.i4[i] ==
          doctest::Approx(scan.integral_pow(1.0, x, 4)).epsilon(1e-9));
  }
  CHECK(p.budget_i2 > 0.0);
  CHECK(p.budget_i2 < 1e-4);

  // J2(x) = int_1^x I1(u)^2 du, checked by quadrature of the running I1
  // at a small grid point (the reference is O(x) per evaluation)
  const double x = p.x[4];
  const double want = oracle::integrate(
      [&](double u) {
        const double v = scan.integral_pow(1.0, u, 1);
        return v * v;
      },
      1.0, x, 1e-10);
  CHECK(p.j2[4] == doctest::Approx(want).epsilon(1e-7));
}

TEST_CASE("profile covers integer endpoints and small grids") {
  ErrorScan scan(table2(), main_term_poly(2));
  GridSpec grid{1.0, 100.0, 12, false};
  const ErrorTermProfile p = scan.profile(grid, false, false);
  CHECK(p.x.front() == 1.0);
  CHECK(p.x.back() == 100.0);
  CHECK(p.delta.front() ==
        doctest::Approx(scan.delta(1.0)).epsilon(1e-12));
  CHECK(p.delta.back() ==
        doctest::Approx(scan.delta(100.0)).epsilon(1e-9));
  CHECK(p.i2.back() ==
        doctest::Approx(scan.integral_pow(1.0, 100.0, 2)).epsilon(1e-10));
  CHECK(p.i4.empty());
  CHECK(p.j2.empty());
}

TEST_CASE("profile is byte-identical across worker counts") {
  ErrorScan scan(table2(), main_term_poly(2));
  GridSpec grid{10.0, 150000.0, 9, true};
  set_worker_count(1);
  const ErrorTermProfile a = scan.profile(grid, true, true);
  set_worker_count(4);
  const ErrorTermProfile b = scan.profile(grid, true, true);
  set_worker_count(8);
  const ErrorTermProfile c = scan.profile(grid, true, true);
  set_worker_count(1);
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    CHECK(a.i1[i] == b.i1[i]);
    CHECK(a.i2[i] == b.i2[i]);
    CHECK(a.i4[i] == b.i4[i]);
    CHECK(a.j2[i] == b.j2[i]);
    CHECK(a.i1[i] == c.i1[i]);
    CHECK(a.i2[i] == c.i2[i]);
    CHECK(a.i4[i] == c.i4[i]);
    CHECK(a.j2[i] == c.j2[i]);
  }
}

TEST_CASE("local average") {
  ErrorScan scan(table2(), main_term_poly(2));
  const auto [avg, dev] = scan.local_average(1000.0, 25.0);
  const double want = scan.integral_pow(1000.0, 1025.0, 1) / 25.0;
  CHECK(avg == doctest::Approx(want).epsilon(1e-12));
  CHECK(dev == doctest::Approx(std::fabs(scan.delta(1000.0) - avg)));
  CHECK_THROWS_AS(scan.local_average(10.0, 20.0), DomainError);
}

TEST_CASE("rational helper") {
  const Rational r = Rational::make(29, 20);
  CHECK(r.str() == "29/20");
  CHECK(Rational::make(6, 4) == Rational::make(3, 2));
  CHECK(Rational::make(29, 20).leq(Rational::make(3, 2)));
  CHECK(!Rational::make(3, 2).leq(Rational::make(29, 20)));
}
