#include "acceptance.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "asymptotics.hpp"
#include "constants.hpp"
#include "divisor_table.hpp"
#include "errors.hpp"
#include "fitting.hpp"
#include "ledger.hpp"
#include "mainterm.hpp"
#include "mellin.hpp"
#include "parallel.hpp"
#include "perron.hpp"
#include "profile.hpp"
#include "voronoi.hpp"
#include "zeta.hpp"

namespace divlab {
namespace {

// ---- independent reference implementations (verification-only) ----

// d_k(n) as the number of ordered k-factorizations, by direct recursion.
std::uint64_t ref_dk(int k, std::uint64_t n) {
  if (k == 1) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    total += ref_dk(k - 1, n / d);
    if (d != n / d) total += ref_dk(k - 1, d);
  }
  return total;
}

double ref_simpson(const std::function<double(double)>& f, double a,
                   double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

double ref_integrate_rec(const std::function<double(double)>& f, double a,
                         double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = ref_simpson(f, a, m);
  const double right = ref_simpson(f, m, b);
  const double thresh =
      15.0 * tol + 1e-14 * (std::fabs(left) + std::fabs(right));
  if (depth > 30 || std::fabs(left + right - whole) < thresh)
    return left + right + (left + right - whole) / 15.0;
  return ref_integrate_rec(f, a, m, left, 0.5 * tol, depth + 1) +
         ref_integrate_rec(f, m, b, right, 0.5 * tol, depth + 1);
}

double ref_integrate(const std::function<double(double)>& f, double a,
                     double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  return ref_integrate_rec(f, a, b, ref_simpson(f, a, b), tol, 0);
}

// zeta by the alternating eta series with Chebyshev acceleration.
std::complex<double> ref_zeta(std::complex<double> s, int n = 64) {
  std::vector<double> d(n + 1);
  double acc = 0.0, term = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (j > 0)
      term *=
          4.0 * (n + j - 1.0) * (n - j + 1.0) / ((2.0 * j) * (2.0 * j - 1.0));
    acc += term;
    d[j] = acc * n;
  }
  std::complex<double> eta = 0.0;
  for (int j = 0; j < n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    eta += sign * (d[j] - d[n]) * std::exp(-s * std::log(j + 1.0));
  }
  eta /= -d[n];
  return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

template <typename KFn>
double residue_estimate(const KFn& kfn, double p, double eps) {
  // 4-point circle average of (s - p) K(s): kills the regular Laurent
  // part to O(eps^4)
  std::complex<double> acc = 0.0;
  for (int m = 0; m < 4; ++m) {
    const std::complex<double> w =
        eps * std::polar(1.0, m * std::numbers::pi / 2.0);
    acc += w * kfn(p + w);
  }
  return acc.real() / 4.0;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Ctx {
  bool quick = false;
  double limit = 0.0;
  const DivisorTable* d2 = nullptr;
  const DivisorTable* d3 = nullptr;
  const ErrorScan* s2 = nullptr;
  const ErrorScan* s3 = nullptr;
  double a = 0.0, b = 0.0, c3 = 0.0, a1 = 0.0;
  double slope2 = 0.0, slope3 = 0.0, slope4 = 0.0;  // criteria 2-4 slopes
};

CriterionResult c1_mean_square(Ctx& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const double x = 1e6;
  const double ratio = c.s2->integral_pow(1.0, x, 2) / std::pow(x, 1.5);
  const ConstApprox ident = const_B_identity();
  const ConstApprox direct = const_B_direct(*c.d2);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  c.b = ident.value;
  c.a = ident.value / (6.0 * pi2);
  c.a1 = -1.0 / (4.0 * pi2);
  const double rel = std::fabs(ratio / c.a - 1.0);
  const double method_rel = std::fabs(direct.value / ident.value - 1.0);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  CriterionResult r{1, "mean-square constant A", false, ""};
  r.pass = rel <= 0.02 && method_rel <= 1e-6 && secs < 120.0;
  r.detail = "I2/X^1.5 = " + fmt(ratio) + ", A = " + fmt(c.a) + ", rel " +
             fmt(rel) + " (tol 0.02); methods rel " + fmt(method_rel) +
             " (tol 1e-6); " + fmt(secs) + "s (tol 120)";
  return r;
}

CriterionResult c2_k3_slope(Ctx& c) {
  const GridSpec g{c.quick ? 1e3 : 1e4, c.limit, 64, true};
  const ErrorTermProfile p = c.s3->profile(g, false);
  c.slope2 = slope_loglog(p.x, p.i2).slope;
  CriterionResult r{2, "k=3 mean-square exponent", false, ""};
  r.pass = std::fabs(c.slope2 - 5.0 / 3.0) <= 0.05;
  r.detail = "slope " + fmt(c.slope2) + " vs 5/3 +- 0.05";
  return r;
}

CriterionResult c3_fourth_moment(Ctx& c) {
  const GridSpec g{c.quick ? 1e3 : 1e4, c.limit, 64, true};
  const ErrorTermProfile p = c.s2->profile(g, true);
  c.slope3 = slope_loglog(p.x, p.i4).slope;
  CriterionResult r{3, "fourth-moment exponent", false, ""};
  r.pass = std::fabs(c.slope3 - 2.0) <= 0.05;
  r.detail = "slope " + fmt(c.slope3) + " vs 2.0 +- 0.05";
  return r;
}

CriterionResult c4_integral_delta(Ctx& c) {
  const GridSpec g{c.quick ? 1e3 : 1e4, c.limit, 64, true};
  const ErrorTermProfile p = c.s2->profile(g, false, true);
  c.slope4 = slope_loglog(p.x, p.j2).slope;
  const bool slope_ok = std::fabs(c.slope4 - 2.5) <= 0.05;

  const std::uint64_t m = 100000;
  const double x1 = 1e3, x2 = 1e4;
  const SeriesValue sa = voronoi_integral_delta(*c.d2, x1, m);
  const SeriesValue sb = voronoi_integral_delta(*c.d2, x2, m);
  const double i1a = c.s2->integral_pow(1.0, x1, 1);
  const double i1b = c.s2->integral_pow(1.0, x2, 1);
  const double diff = (sb.value - sa.value) - (i1b - i1a);
  const bool series_ok = std::fabs(diff) <= 1e-2;

  CriterionResult r{4, "integral of Delta", false, ""};
  r.pass = slope_ok && series_ok;
  r.detail = "J2 slope " + fmt(c.slope4) + " vs 2.5 +- 0.05" +
             (slope_ok ? " ok" : " FAIL") + "; two-point |" + fmt(diff) +
             "| <= 1e-2" + (series_ok ? " ok" : " FAIL") +
             " (truncation tail of the series decays like M^-1/2; the "
             "pinned M=1e5 floor is ~0.317)";
  return r;
}

CriterionResult c5_perron(Ctx& c) {
  const PerronDelta pd = perron_delta(*c.s2, 10.5, 0.9, 1e4);
  const double err = std::fabs(pd.approx - pd.exact);
  const double k_hi = perron_kernel(3.7, 0.9, 1e4);
  const double k_one = perron_kernel(1.0, 0.9, 1e4);
  const double k_lo = perron_kernel(0.25, 0.9, 1e4);
  const double kerr = std::max({std::fabs(k_hi - 1.0), std::fabs(k_one - 0.5),
                                std::fabs(k_lo)});
  CriterionResult r{5, "Perron inversion", false, ""};
  r.pass = err <= 1e-2 && kerr <= 1e-3;
  r.detail = "|approx-exact| " + fmt(err) + " (tol 1e-2); kernel max err " +
             fmt(kerr) + " (tol 1e-3)";
  return r;
}

CriterionResult c6_voronoi(Ctx& c) {
  const SeriesValue v = voronoi_delta_k(*c.d2, 5000.5, 1000000);
  const double dev = std::fabs(v.value - c.s2->delta(5000.5));
  const bool within = dev <= v.tail_bound;
  // k = 3: the (k-3)pi/4 offset vanishes, so the two series coincide
  const SeriesValue e15 = voronoi_delta3(*c.d3, 1500.0, 1000.0);
  const SeriesValue e18 = voronoi_delta_k(*c.d3, 1500.0, 1000000);
  const bool identical = e15.value == e18.value;
  CriterionResult r{6, "Voronoi expansions", false, ""};
  r.pass = within && identical;
  r.detail = "k=2 dev " + fmt(dev) + " <= budget " + fmt(v.tail_bound) +
             (within ? " ok" : " FAIL") + "; k=3 term-identity " +
             (identical ? "exact" : "FAIL");
  return r;
}

CriterionResult c7_mellin(Ctx& c) {
  const std::complex<double> s(1.8, 0.0);
  const MellinValue direct = mellin_K_direct(*c.s2, s, c.limit);
  const MellinValue cont = mellin_K2_continued(*c.s2, s, c.a, c.limit);
  const double rel = std::abs(direct.value - cont.value) / std::abs(cont.value);

  const double eps = 1e-2;
  const double res2 = residue_estimate(
      [&](std::complex<double> sv) {
        return mellin_K2_continued(*c.s2, sv, c.a, c.limit).value;
      },
      1.5, eps);
  const double rel2 = std::fabs(res2 / (1.5 * c.a) - 1.0);

  c.c3 = const_C3_direct(*c.d3).value;
  const double res3 = residue_estimate(
      [&](std::complex<double> sv) {
        return mellin_K3_continued(*c.s3, sv, c.c3, c.limit).value;
      },
      5.0 / 3.0, eps);
  const double rel3 = std::fabs(res3 / (5.0 / 3.0 * c.c3) - 1.0);

  CriterionResult r{7, "Mellin continuation", false, ""};
  r.pass = rel <= 1e-4 && rel2 <= 1e-3 && rel3 <= 1e-3;
  r.detail = "direct vs continued rel " + fmt(rel) +
             " (tol 1e-4); residue rel k=2 " + fmt(rel2) + ", k=3 " +
             fmt(rel3) + " (tol 1e-3)";
  return r;
}

CriterionResult c8_laplace(Ctx& c) {
  const LaplaceCheck at4 = laplace_check(*c.s2, 1e4, c.b);
  const double ratio = at4.lhs / at4.leading;
  std::vector<double> ts = c.quick ? std::vector<double>{1e3, 1e4, 3e4}
                                   : std::vector<double>{1e3, 1e4, 1e5};
  std::vector<double> rs;
  for (double t : ts)
    rs.push_back(t == 1e4 ? at4.residual : laplace_check(*c.s2, t, c.b).residual);
  const double a1_fit = laplace_fit_a1(ts, rs);
  const double rel = std::fabs(a1_fit / c.a1 - 1.0);
  CriterionResult r{8, "Laplace transform", false, ""};
  r.pass = ratio >= 0.95 && ratio <= 1.05 && rel <= 0.40;
  r.detail = "lhs/leading " + fmt(ratio) + " (window [0.95,1.05]); a1 fit " +
             fmt(a1_fit) + " vs " + fmt(c.a1) + ", rel " + fmt(rel) +
             " (tol 0.40)";
  return r;
}

CriterionResult c9_f_structure(Ctx& c) {
  const GridSpec g{c.quick ? 1e3 : 1e4, c.limit, 64, true};
  const RemainderProfile prof = extract_remainder(*c.s2, g, c.a);
  const ThreeTermFit fit = fit_F(prof);
  const double rel = std::fabs(fit.a / c.a1 - 1.0);
  std::vector<double> gx, gv;
  for (std::size_t i = 0; i < prof.x.size(); ++i) {
    const double l = std::log(prof.x[i]);
    const double model =
        fit.a * prof.x[i] * l * l + fit.b * prof.x[i] * l + fit.c * prof.x[i];
    gx.push_back(prof.x[i]);
    gv.push_back(std::fabs(prof.rem[i] - model));
  }
  const double gslope = slope_loglog(gx, gv).slope;
  CriterionResult r{9, "F(x) structure", false, ""};
  r.pass = rel <= 0.15 && gslope < 1.0;
  r.detail = "fit a " + fmt(fit.a) + " vs " + fmt(c.a1) + ", rel " + fmt(rel) +
             " (tol 0.15); G slope " + fmt(gslope) + " (< 1)";
  return r;
}

CriterionResult c10_ledger(Ctx& c) {
  bool roundtrip = true;
  for (const LedgerEntry& e : ledger_entries())
    if (!(rational_parse(rational_str(e.bound)) == e.bound)) roundtrip = false;
  const bool consistent = ledger_consistent();
  // bounds implied by the ledger for the measured slopes: I2(k=3) grows
  // like x^{1+2 beta_3}, I4(k=2) like x^{1+4 beta_2}, J2(k=2) like X^rho_2
  const double b2 = ledger(LedgerKind::kRho, 2).approx();
  const double b_i2 = 1.0 + 2.0 * ledger(LedgerKind::kBeta, 3).approx();
  const double b_i4 = 1.0 + 4.0 * ledger(LedgerKind::kBeta, 2).approx();
  const bool slopes_ok = c.slope2 <= b_i2 + 0.1 && c.slope3 <= b_i4 + 0.1 &&
                         c.slope4 <= b2 + 0.1;
  CriterionResult r{10, "ledger integrity", false, ""};
  r.pass = roundtrip && consistent && slopes_ok;
  r.detail = std::string("round-trip ") + (roundtrip ? "ok" : "FAIL") +
             "; consistency " + (consistent ? "ok" : "FAIL") + "; slopes " +
             fmt(c.slope2) + "<=" + fmt(b_i2 + 0.1) + ", " + fmt(c.slope3) +
             "<=" + fmt(b_i4 + 0.1) + ", " + fmt(c.slope4) + "<=" +
             fmt(b2 + 0.1);
  return r;
}

CriterionResult c11_properties(Ctx& c) {
  // d_k oracle equivalence, N = 1e4, k <= 6
  bool dk_ok = true;
  for (int k = 1; k <= 6 && dk_ok; ++k) {
    const DivisorTable t = DivisorTable::build(k, 10000);
    for (std::uint64_t n = 1; n <= 10000; ++n)
      if (t.value(n) != ref_dk(k, n)) {
        dk_ok = false;
        break;
      }
  }

  // Delta_1(x) = floor(x) - x + 1/2 away from integers, 0 at integers
  const DivisorTable t1 = DivisorTable::build(1, 2000);
  const ErrorScan s1(t1, main_term_poly(1));
  bool d1_ok = true;
  for (double x : {2.5, 7.25, 999.75, 1536.0, 41.0})
    if (std::fabs(s1.delta(x) -
                  (x == std::floor(x) ? 0.0 : std::floor(x) - x + 0.5)) >
        1e-12)
      d1_ok = false;

  // panel-exact integration vs adaptive quadrature on unit panels;
  // within (n, n+1) the integrand is base - main(u) with base the full
  // divisor sum at n, smooth up to both endpoints
  const MainTermModel& mm = c.s2->model();
  double quad = 0.0;
  for (int n = 1; n < 50; ++n) {
    const double base =
        c.s2->delta(static_cast<double>(n), false) + mm.main_term(n);
    quad += ref_integrate([&](double u) {
      const double d = base - mm.main_term(u);
      return d * d;
    }, n, n + 1.0);
  }
  const bool panel_ok =
      std::fabs(c.s2->integral_pow(1.0, 50.0, 2) - quad) <= 1e-8;

  // zeta evaluator vs the eta-series reference at 100 seeded points
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> us(0.5, 3.0), ut(-40.0, 40.0);
  double zmax = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::complex<double> s(us(rng), ut(rng));
    if (std::abs(s - 1.0) < 0.1) s += std::complex<double>(0.2, 0.0);
    zmax = std::max(zmax, std::abs(zeta_em(s).value - ref_zeta(s)));
  }
  const bool zeta_ok = zmax <= 1e-10;

  // worker-count determinism of block-parallel outputs
  const int saved = worker_count();
  double prof_v[3], vor_v[3];
  int idx = 0;
  for (int w : {1, 4, 8}) {
    set_worker_count(w);
    const GridSpec g{1.0, 1e6, 16, true};
    prof_v[idx] = c.s2->profile(g, false).i2.back();
    vor_v[idx] = voronoi_delta_k(*c.d2, 5000.5, 1000000).value;
    ++idx;
  }
  set_worker_count(saved);
  const bool det_ok = prof_v[0] == prof_v[1] && prof_v[0] == prof_v[2] &&
                      vor_v[0] == vor_v[1] && vor_v[0] == vor_v[2];

  CriterionResult r{11, "property suites", false, ""};
  r.pass = dk_ok && d1_ok && panel_ok && zeta_ok && det_ok;
  r.detail = std::string("d_k oracle ") + (dk_ok ? "ok" : "FAIL") +
             "; Delta_1 closed form " + (d1_ok ? "ok" : "FAIL") +
             "; panel vs quadrature " + (panel_ok ? "ok" : "FAIL") +
             "; zeta vs eta max err " + fmt(zmax) + " (tol 1e-10)" +
             "; determinism " + (det_ok ? "ok" : "FAIL");
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  Ctx c;
  c.quick = opt.quick;
  c.limit = opt.quick ? 1e6 : 1e7;
  const DivisorTable d2 =
      DivisorTable::build(2, static_cast<std::uint64_t>(c.limit));
  const DivisorTable d3 =
      DivisorTable::build(3, static_cast<std::uint64_t>(c.limit));
  const ErrorScan s2(d2, main_term_poly(2));
  const ErrorScan s3(d3, main_term_poly(3));
  c.d2 = &d2;
  c.d3 = &d3;
  c.s2 = &s2;
  c.s3 = &s3;

  std::vector<CriterionResult> out;
  out.push_back(c1_mean_square(c));
  out.push_back(c2_k3_slope(c));
  out.push_back(c3_fourth_moment(c));
  out.push_back(c4_integral_delta(c));
  out.push_back(c5_perron(c));
  out.push_back(c6_voronoi(c));
  out.push_back(c7_mellin(c));
  out.push_back(c8_laplace(c));
  out.push_back(c9_f_structure(c));
  out.push_back(c10_ledger(c));
  out.push_back(c11_properties(c));
  return out;
}

std::string format_acceptance(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const CriterionResult& r : results)
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name
       << "  (" << r.detail << ")\n";
  return os.str();
}

}  // namespace divlab
