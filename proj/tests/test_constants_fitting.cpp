#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "constants.hpp"
#include "divisor_table.hpp"
#include "errors.hpp"
#include "fitting.hpp"

using namespace divlab;

TEST_CASE("linear solve and least squares recover exact coefficients") {
  // 3x3 with known solution (1, -2, 3)
  std::vector<std::vector<double>> a = {
      {2.0, 1.0, -1.0}, {-3.0, -1.0, 2.0}, {-2.0, 1.0, 2.0}};
  std::vector<double> b = {2.0 * 1 + 1.0 * -2 - 3.0, -3.0 + 2.0 + 6.0,
                           -2.0 - 2.0 + 6.0};
  const std::vector<double> x = solve_linear(a, b);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      solve_linear({{1.0, 2.0}, {2.0, 4.0}}, {1.0, 2.0}), NumericalError);

  // synthetic a x log^2 x + b x log x + c x is recovered exactly
  std::vector<double> xs, fs;
  const double ca = -0.025330295910584444, cb = 0.7, cc = -1.3;
  for (int i = 0; i < 40; ++i) {
    const double xv = 100.0 * std::pow(10.0, i / 13.0);
    xs.push_back(xv);
    const double l = std::log(xv);
    fs.push_back(ca * xv * l * l + cb * xv * l + cc * xv);
  }
  const ThreeTermFit fit = fit_xlog2(xs, fs);
  CHECK(fit.a == doctest::Approx(ca).epsilon(1e-9));
  CHECK(fit.b == doctest::Approx(cb).epsilon(1e-9));
  CHECK(fit.c == doctest::Approx(cc).epsilon(1e-9));
  CHECK_THROWS_AS(fit_xlog2({1.0, 2.0}, {1.0, 2.0}), DomainError);
}

TEST_CASE("log-log slope fit") {
  std::vector<double> xs, vs;
  for (int i = 0; i < 24; ++i) {
    const double x = 10.0 * std::pow(10.0, i / 8.0);
    xs.push_back(x);
    vs.push_back(3.5 * x * x);
  }
  const SlopeFit fit = slope_loglog(xs, vs);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.ci_lo <= 2.0);
  CHECK(fit.ci_hi >= 2.0);
  CHECK(fit.dropped == 0);

  // sign flips only affect |v|; zeros are dropped
  vs[3] = -vs[3];
  vs[5] = 0.0;
  const SlopeFit fit2 = slope_loglog(xs, vs);
  CHECK(fit2.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit2.dropped == 1);

  CHECK_THROWS_AS(slope_loglog({1, 2, 3}, {1, 2, 3}), DomainError);
  std::vector<double> narrow_x, narrow_v;
  for (int i = 0; i < 12; ++i) {
    narrow_x.push_back(10.0 + i);
    narrow_v.push_back(10.0 + i);
  }
  CHECK_THROWS_AS(slope_loglog(narrow_x, narrow_v), DomainError);
}

TEST_CASE("mean-square constant B: series identity vs direct summation") {
  const ConstApprox ident = const_B_identity();
  // zeta^4(3/2)/zeta(3), pinned externally to 15 digits
  CHECK(ident.value == doctest::Approx(38.745144143901321).epsilon(1e-12));
  CHECK(ident.budget < 1e-9);

  const DivisorTable t2 = DivisorTable::build(2, 1000000);
  const ConstApprox direct = const_B_direct(t2);
  CHECK(std::fabs(direct.value - ident.value) <= 1e-6 * ident.value);
  CHECK(std::fabs(direct.value - ident.value) <= direct.budget);

  const DivisorTable t3 = DivisorTable::build(3, 1000);
  CHECK_THROWS_AS(const_B_direct(t3), DomainError);
}

TEST_CASE("cubic-moment constant C3: direct vs Euler-product acceleration") {
  const double prod = const_C3_product();
  // zeta^9(4/3) H(4/3) / (10 pi^2), pinned externally
  CHECK(prod == doctest::Approx(214.65312653306209).epsilon(1e-7));

  const DivisorTable t3 = DivisorTable::build(3, 1000000);
  const ConstApprox direct = const_C3_direct(t3);
  CHECK(std::fabs(direct.value - prod) <= direct.budget);
  CHECK(std::fabs(direct.value - prod) <= 1e-5 * prod);
  CHECK(direct.budget < 0.01 * prod);

  CHECK_THROWS_AS(const_C3_product(10), DomainError);
}
