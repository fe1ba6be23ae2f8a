#include "mellin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "errors.hpp"
#include "fitting.hpp"
#include "kahan.hpp"
#include "panel.hpp"
#include "parallel.hpp"

namespace divlab {

namespace {

constexpr double kPoleDelta = 1e-3;

// Fixed-size block decomposition of the full unit panels [n, n+1],
// n = first..last, with exact divisor prefix sums at block starts.
struct BlockPlan {
  static constexpr std::uint64_t kBlock = 8192;
  std::uint64_t first = 2, last = 1;
  std::size_t nblocks = 0;
  std::vector<std::uint64_t> prefix;

  std::uint64_t lo(std::size_t b) const { return first + b * kBlock; }
  std::uint64_t hi(std::size_t b) const {
    return std::min(last + 1, first + (b + 1) * kBlock);
  }
};

BlockPlan plan_blocks(const DivisorTable& table, std::uint64_t last_panel) {
  BlockPlan plan;
  plan.last = last_panel;
  if (last_panel < plan.first) return plan;
  const std::uint64_t npan = last_panel - plan.first + 1;
  plan.nblocks = static_cast<std::size_t>((npan + BlockPlan::kBlock - 1) /
                                          BlockPlan::kBlock);
  plan.prefix.resize(plan.nblocks);
  std::uint64_t s = table.value(1) + table.value(2);  // prefix(2)
  std::uint64_t n = plan.first;
  for (std::size_t b = 0; b < plan.nblocks; ++b) {
    plan.prefix[b] = s;
    for (; n < plan.hi(b); ++n) s += table.value(n + 1);
  }
  return plan;
}

// The weight expansion (1 + t/x0)^{-s} only converges usefully while
// |s| tau / x0 is small; split a panel into segments that keep it <= 0.45
// (which also enforces the ratio-1/2 rule needed near x = 1).
double segment_tau(double lo, double end, double smag) {
  const double t = 0.45 * lo / std::max(smag, 1.0);
  return std::min(end - lo, std::max(t, 1e-7));
}

// int_X^inf x^{-a} log^j x dx for Re a > 1, closed form.
std::complex<double> ctail_logpow(double x, std::complex<double> a, int j) {
  const std::complex<double> m = 1.0 / (a - 1.0);
  const double big_l = std::log(x);
  std::complex<double> sum = 0.0;
  std::complex<double> fall = 1.0;  // j!/(j-i)! m^i
  for (int i = 0; i <= j; ++i) {
    if (i > 0) fall *= m * static_cast<double>(j - i + 1);
    sum += fall * std::pow(big_l, j - i);
  }
  return m * std::exp((1.0 - a) * big_l) * sum;
}

double tail_logpow(double x, double a, int j) {
  return ctail_logpow(x, a, j).real();
}

Poly antiderive(const Poly& p) {
  Poly r;
  r.n = std::min(p.n + 1, kPolyCap);
  for (int i = 0; i + 1 < r.n; ++i) r.c[i + 1] = p.c[i] / (i + 1);
  return r;
}

// Truncated int_1^{nmax} Delta^p x^{-s} dx, with the plain running
// integral int_1^x Delta^p recorded at a halfway block boundary and at
// the cutoff (both used for tail modelling).
struct DirectScanResult {
  std::complex<double> mellin;
  double plain = 0.0;       // at x = nmax
  double plain_half = 0.0;  // at x = xhalf (0 when unavailable)
  double xhalf = 0.0;
};

DirectScanResult direct_scan(const ErrorScan& scan, int p,
                             std::complex<double> s, std::uint64_t nmax) {
  const DivisorTable& table = scan.table();
  const MainTermModel& model = scan.model();
  const double smag = std::abs(s);

  KahanComplex mval;
  KahanReal pval;
  {
    PanelExpander pe(model);
    double lo = 1.0;
    while (lo < 2.0 - 1e-15) {
      const double tau = segment_tau(lo, 2.0, smag);
      pe.prepare(lo, tau, 1.0);
      mval.add(pe.integral_pow_mellin(p, s));
      pval.add(pe.integral_pow(p));
      lo += tau;
    }
  }

  const BlockPlan plan = plan_blocks(table, nmax - 1);
  std::vector<KahanComplex> bm(plan.nblocks);
  std::vector<KahanReal> bp(plan.nblocks);
  for_each_block(plan.nblocks, [&](std::size_t b) {
    PanelExpander pe(model);
    std::uint64_t pref = plan.prefix[b];
    for (std::uint64_t n = plan.lo(b); n < plan.hi(b); ++n) {
      const double x0 = static_cast<double>(n);
      if (smag < 0.45 * x0) {
        pe.prepare(x0, 1.0, static_cast<double>(pref));
        bm[b].add(pe.integral_pow_mellin(p, s));
        bp[b].add(pe.integral_pow(p));
      } else {
        double lo = x0;
        const double end = x0 + 1.0;
        while (end - lo > 1e-15) {
          const double tau = segment_tau(lo, end, smag);
          pe.prepare(lo, tau, static_cast<double>(pref));
          bm[b].add(pe.integral_pow_mellin(p, s));
          bp[b].add(pe.integral_pow(p));
          lo += tau;
        }
      }
      pref += table.value(n + 1);
    }
  });
  DirectScanResult out;
  const std::uint64_t half = nmax / 2;
  for (std::size_t b = 0; b < plan.nblocks; ++b) {
    if (out.xhalf == 0.0 && plan.lo(b) >= half && b > 0) {
      out.xhalf = static_cast<double>(plan.lo(b));
      out.plain_half = pval.value();
    }
    mval.merge(bm[b]);
    pval.merge(bp[b]);
  }
  out.mellin = mval.value();
  out.plain = pval.value();
  return out;
}

// Two-point model I2(x) = c x^p + r shape(x) fitted at (xh, x);
// shape is x log^2 x for k = 2 and x^{14/9} for k = 3.
struct TailModel {
  double c = 0.0, r = 0.0;
};

double remainder_shape(int k, double x) {
  return k == 2 ? x * std::pow(std::log(x), 2) : std::pow(x, 14.0 / 9.0);
}

TailModel fit_tail(int k, double p, const DirectScanResult& r, double x) {
  TailModel m;
  if (r.xhalf < 16.0) {
    m.c = r.plain / std::pow(x, p);
    return m;
  }
  const std::vector<double> sol = solve_linear(
      {{std::pow(r.xhalf, p), remainder_shape(k, r.xhalf)},
       {std::pow(x, p), remainder_shape(k, x)}},
      {r.plain_half, r.plain});
  m.c = sol[0];
  m.r = sol[1];
  return m;
}

}  // namespace

MellinValue mellin_K_direct(const ErrorScan& scan, std::complex<double> s,
                            double xmax) {
  const int k = scan.k();
  if (k != 2 && k != 3)
    throw UnsupportedError("mellin: direct evaluation needs k in {2,3}");
  const double p = (k == 2) ? 1.5 : 5.0 / 3.0;
  if (s.real() < p + 0.25)
    throw DomainError("mellin: abscissa too small for the direct tail bound");
  const auto nmax = static_cast<std::uint64_t>(std::floor(xmax));
  if (nmax < 10) throw DomainError("mellin: xmax must be >= 10");
  if (nmax > scan.table().limit())
    throw DomainError("mellin: xmax exceeds sieve limit");

  const DirectScanResult r = direct_scan(scan, 2, s, nmax);
  // Complete the tail by parts: int_X^inf Delta^2 x^{-s} dx =
  // -I2(X) X^{-s} + s int_X^inf I2 x^{-s-1} dx with I2 modelled as
  // c x^p + r shape(x) from a two-point fit; what remains discarded is
  // the next-order remainder, budgeted as a fraction of the r-term.
  const double x = static_cast<double>(nmax);
  const TailModel tm = fit_tail(k, p, r, x);
  const std::complex<double> xms = std::exp(-s * std::log(x));
  const std::complex<double> wshape =
      k == 2 ? ctail_logpow(x, s, 2)
             : std::exp((14.0 / 9.0 - s) * std::log(x)) / (s - 14.0 / 9.0);
  const std::complex<double> completion =
      s * (tm.c * std::exp((p - s) * std::log(x)) / (s - p) +
           tm.r * wshape) -
      r.plain * xms;
  const std::complex<double> value = r.mellin + completion;
  const double budget = (0.5 + 4.0 / std::log(x)) *
                            std::abs(s * tm.r * wshape) +
                        1e-12 * std::abs(value);
  return {k, s, value, MellinMethod::kDirect, budget};
}

namespace {

MellinValue continued_impl(const ErrorScan& scan, std::complex<double> s,
                           double cnst, double xmax, double p) {
  const DivisorTable& table = scan.table();
  const MainTermModel& model = scan.model();
  const auto nmax = static_cast<std::uint64_t>(std::floor(xmax));
  if (nmax < 100) throw DomainError("mellin: xmax must be >= 100");
  if (nmax > table.limit())
    throw DomainError("mellin: xmax exceeds sieve limit");
  const double smag = std::abs(s) + 1.0;

  // int_1^X I2(x) x^{-s-1} dx, panel exact: on each segment the factor
  // I2 is its value at the segment start plus the antiderivative of the
  // local Delta^2 poly.
  KahanComplex i2int;
  KahanReal i2run;
  {
    PanelExpander pe(model);
    double lo = 1.0;
    while (lo < 2.0 - 1e-15) {
      const double tau = segment_tau(lo, 2.0, smag);
      pe.prepare(lo, tau, 1.0);
      Poly qa = antiderive(pe.pow_delta(2));
      qa.c[0] = i2run.value();
      if (qa.n == 0) qa.n = 1;
      i2int.add(pe.integral_poly_mellin(qa, s + 1.0));
      i2run.add(pe.integral_pow(2));
      lo += tau;
    }
  }

  const BlockPlan plan = plan_blocks(table, nmax - 1);
  // Per block: the parts relative to the block-start I2 plus the panel
  // Mellin masses (weighted by the absolute prefix afterwards).
  std::vector<KahanComplex> brel(plan.nblocks), bmass(plan.nblocks);
  std::vector<KahanReal> bi2(plan.nblocks);
  for_each_block(plan.nblocks, [&](std::size_t b) {
    PanelExpander pe(model);
    std::uint64_t pref = plan.prefix[b];
    KahanReal run2;
    Poly one;
    one.n = 1;
    one.c[0] = 1.0;
    for (std::uint64_t n = plan.lo(b); n < plan.hi(b); ++n) {
      double lo = static_cast<double>(n);
      const double end = lo + 1.0;
      while (end - lo > 1e-15) {
        const double tau = segment_tau(lo, end, smag);
        pe.prepare(lo, tau, static_cast<double>(pref));
        Poly qa = antiderive(pe.pow_delta(2));
        qa.c[0] = run2.value();
        if (qa.n == 0) qa.n = 1;
        brel[b].add(pe.integral_poly_mellin(qa, s + 1.0));
        bmass[b].add(pe.integral_poly_mellin(one, s + 1.0));
        run2.add(pe.integral_pow(2));
        lo += tau;
      }
      pref += table.value(n + 1);
    }
    bi2[b].merge(run2);
  });

  // serial combine; measure the remainder constant at block starts in the
  // top decade while the absolute I2 prefix is at hand
  const double x = static_cast<double>(nmax);
  const bool log_model = p == 1.5;  // F ~ x log^4 x cited, R ~ x^{14/9}
  double cmeas = 0.0;
  {
    KahanReal pre2 = i2run;
    for (std::size_t b = 0; b < plan.nblocks; ++b) {
      const double xb = static_cast<double>(plan.lo(b));
      if (xb >= x / 10.0) {
        const double rem = pre2.value() - cnst * std::pow(xb, p);
        const double shape = log_model ? xb * std::pow(std::log(xb), 4)
                                       : std::pow(xb, 14.0 / 9.0);
        cmeas = std::max(cmeas, std::fabs(rem) / shape);
      }
      i2int.add(brel[b].value() + pre2.value() * bmass[b].value());
      pre2.merge(bi2[b]);
    }
  }

  const std::complex<double> xpms = std::exp((p - s) * std::log(x));
  const std::complex<double> fint =
      i2int.value() - cnst * (1.0 - xpms) / (s - p);
  const std::complex<double> value = cnst * (p / (s - p) + 1.0) + s * fint;

  const double sigma = s.real();
  const double tail =
      std::abs(s) * cmeas *
      (log_model ? tail_logpow(x, sigma, 4)
                 : std::pow(x, 14.0 / 9.0 - sigma) / (sigma - 14.0 / 9.0));
  return {scan.k(), s, value,
          p == 1.5 ? MellinMethod::kContinuedK2 : MellinMethod::kContinuedK3, tail};
}

}  // namespace

MellinValue mellin_K2_continued(const ErrorScan& scan2, std::complex<double> s,
                                double a_const, double xmax) {
  if (scan2.k() != 2) throw DomainError("mellin: continuation (k=2) needs k=2");
  if (s.real() <= 1.0 + kPoleDelta)
    throw DomainError("mellin: continuation needs Re s > 1");
  if (std::abs(s - 1.5) < kPoleDelta)
    throw DomainError("mellin: too close to the pole at s = 3/2");
  return continued_impl(scan2, s, a_const, xmax, 1.5);
}

MellinValue mellin_K3_continued(const ErrorScan& scan3, std::complex<double> s,
                                double c3_const, double xmax) {
  if (scan3.k() != 3) throw DomainError("mellin: continuation (k=3) needs k=3");
  if (s.real() <= 14.0 / 9.0 + kPoleDelta)
    throw DomainError("mellin: continuation needs Re s > 14/9");
  if (std::abs(s - 5.0 / 3.0) < kPoleDelta)
    throw DomainError("mellin: too close to the pole at s = 5/3");
  return continued_impl(scan3, s, c3_const, xmax, 5.0 / 3.0);
}

LaplaceCheck laplace_check(const ErrorScan& scan2, double big_t,
                           double b_const) {
  if (scan2.k() != 2) throw DomainError("laplace: needs k = 2");
  if (big_t < 10.0) throw DomainError("laplace: T must be >= 10");
  const DivisorTable& table = scan2.table();
  const MainTermModel& model = scan2.model();
  // e^{-x/T} tail beyond 33T is < 1e-12 of the leading T^{3/2} term
  const double cutoff = 33.0 * big_t;
  const auto nmax = static_cast<std::uint64_t>(std::floor(cutoff));
  if (nmax + 1 > table.limit())
    throw DomainError("laplace: cutoff 33T exceeds sieve limit");

  KahanReal lhs;
  {
    // [0, 1]: the divisor sum is empty, Delta = -main term; composite
    // Simpson (smooth integrand, value ~ (zeta^k(0))^2 at 0)
    constexpr int kIntervals = 512;
    const double h = 1.0 / kIntervals;
    auto f = [&](double u) {
      u = std::max(u, 1e-30);
      const double m = model.main_term(u);
      return m * m * std::exp(-u / big_t);
    };
    KahanReal simpson;
    simpson.add(f(0.0) + f(1.0));
    for (int i = 1; i < kIntervals; ++i)
      simpson.add((i % 2 ? 4.0 : 2.0) * f(i * h));
    lhs.add(simpson.value() * h / 3.0);
  }
  {
    PanelExpander pe(model);
    double lo = 1.0;
    while (lo < 2.0 - 1e-15) {
      const double cut = std::min(2.0, lo + lo * 0.5);
      pe.prepare(lo, cut - lo, 1.0);
      lhs.add(pe.integral_pow_exp(2, big_t));
      lo = cut;
    }
  }
  const BlockPlan plan = plan_blocks(table, nmax - 1);
  std::vector<KahanReal> bsum(plan.nblocks);
  for_each_block(plan.nblocks, [&](std::size_t b) {
    PanelExpander pe(model);
    std::uint64_t pref = plan.prefix[b];
    for (std::uint64_t n = plan.lo(b); n < plan.hi(b); ++n) {
      pe.prepare(static_cast<double>(n), 1.0, static_cast<double>(pref));
      bsum[b].add(pe.integral_pow_exp(2, big_t));
      pref += table.value(n + 1);
    }
  });
  for (std::size_t b = 0; b < plan.nblocks; ++b) lhs.merge(bsum[b]);

  LaplaceCheck out;
  out.lhs = lhs.value();
  out.leading = b_const / 8.0 * std::pow(big_t / std::numbers::pi, 1.5);
  out.residual = out.lhs - out.leading;
  return out;
}

double laplace_fit_a1(const std::vector<double>& big_t,
                      const std::vector<double>& residual) {
  if (big_t.size() != residual.size() || big_t.size() < 3)
    throw DomainError("laplace fit: need >= 3 matched samples");
  const std::size_t n = big_t.size();
  std::vector<std::vector<double>> cols(3, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double l = std::log(big_t[i]);
    cols[0][i] = big_t[i] * l * l;
    cols[1][i] = big_t[i] * l;
    cols[2][i] = big_t[i];
  }
  return lsq_solve(cols, residual)[0];
}

ParsevalPartial parseval_partial(const ErrorScan& scan2, double sigma,
                                 double tmax, int points) {
  if (scan2.k() != 2) throw DomainError("parseval: needs k = 2");
  if (sigma < 1.6) throw DomainError("parseval: sigma must be >= 1.6");
  if (tmax <= 0.0 || points < 2)
    throw DomainError("parseval: need tmax > 0 and >= 2 grid points");
  const std::uint64_t nmax = scan2.table().limit();

  ParsevalPartial out;
  out.t.resize(points);
  out.partial.resize(points);
  std::vector<double> gsq(points);
  for (int i = 0; i < points; ++i) {
    out.t[i] = tmax * i / (points - 1);
    const std::complex<double> s(sigma, out.t[i]);
    const std::complex<double> kv = direct_scan(scan2, 2, s, nmax).mellin;
    gsq[i] = std::norm(kv) / std::numbers::pi;
  }
  KahanReal acc;
  out.partial[0] = 0.0;
  for (int i = 1; i < points; ++i) {
    acc.add(0.5 * (gsq[i - 1] + gsq[i]) * (out.t[i] - out.t[i - 1]));
    out.partial[i] = acc.value();
  }

  // Parseval bound int_1^inf Delta^4 x^{1-2 sigma} dx: truncated value
  // plus an I4 ~ c x^2 shaped tail, with slack for the t-grid trapezoid
  const DirectScanResult r =
      direct_scan(scan2, 4, std::complex<double>(2.0 * sigma - 1.0), nmax);
  const double x = static_cast<double>(nmax);
  const double c = r.plain / (x * x);
  out.bound = 1.05 * r.mellin.real() +
              1.2 * 2.0 * c * std::pow(x, 3.0 - 2.0 * sigma) /
                  (2.0 * sigma - 3.0);
  return out;
}

}  // namespace divlab
