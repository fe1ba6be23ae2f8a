#include "perron.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "kahan.hpp"
#include "parallel.hpp"
#include "zeta.hpp"

namespace divlab {

namespace {

// 15-point Gauss-Legendre on [-1,1] with an embedded 7-point rule (the odd
// nodes are not shared; the 7-point value is computed separately and used
// only as an error estimate).
const double kGl15X[8] = {0.0,
                          0.2011940939974345,
                          0.3941513470775634,
                          0.5709721726085388,
                          0.7244177313601700,
                          0.8482065834104272,
                          0.9372733924007059,
                          0.9879925180204854};
const double kGl15W[8] = {0.2025782419255613, 0.1984314853271116,
                          0.1861610000155622, 0.1662692058169939,
                          0.1395706779261543, 0.1071592204671719,
                          0.0703660474881081, 0.0307532419961173};
const double kGl7X[4] = {0.0, 0.4058451513773972, 0.7415311855993944,
                         0.9491079123427585};
const double kGl7W[4] = {0.4179591836734694, 0.3818300505051189,
                         0.2797053914892767, 0.1294849661688697};

using RealFn = std::function<double(double)>;

double gl_rule(const RealFn& f, double a, double b, const double* xs,
               const double* ws, int half) {
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  double acc = ws[0] * f(mid);
  for (int i = 1; i < half; ++i)
    acc += ws[i] * (f(mid + rad * xs[i]) + f(mid - rad * xs[i]));
  return acc * rad;
}

double adaptive_gl(const RealFn& f, double a, double b, double tol,
                   int depth) {
  const double v15 = gl_rule(f, a, b, kGl15X, kGl15W, 8);
  const double v7 = gl_rule(f, a, b, kGl7X, kGl7W, 4);
  if (std::fabs(v15 - v7) <= tol || depth >= 12) {
    if (depth >= 12 && std::fabs(v15 - v7) > 1e3 * tol)
      throw NumericalError("contour quadrature failed to converge");
    return v15;
  }
  const double m = 0.5 * (a + b);
  return adaptive_gl(f, a, m, 0.5 * tol, depth + 1) +
         adaptive_gl(f, m, b, 0.5 * tol, depth + 1);
}

// zeta(c+it) on a fixed vertical line, Euler-Maclaurin with the n^{-c} and
// log n tables hoisted out of the per-t loop.
class ZetaLine {
 public:
  ZetaLine(double c, double tmax) : c_(c) {
    nmax_ = std::max(24, static_cast<int>(std::ceil(tmax / 2.0)) + 1);
    logn_.resize(nmax_ + 1);
    npow_.resize(nmax_ + 1);
    for (int n = 1; n <= nmax_; ++n) {
      logn_[n] = std::log(static_cast<double>(n));
      npow_[n] = std::pow(static_cast<double>(n), -c);
    }
  }

  // n_terms is a caller-supplied cap so it can be held fixed across a
  // quadrature panel (a t-dependent count would put tiny jumps into the
  // integrand and defeat the error estimator).
  std::complex<double> eval(double t, int n_terms) const {
    n_terms = std::min(nmax_, std::max(24, n_terms));
    const std::complex<double> s{c_, t};
    KahanComplex acc;
    for (int n = 1; n < n_terms; ++n) {
      const double ph = t * logn_[n];
      acc.add({npow_[n] * std::cos(ph), -npow_[n] * std::sin(ph)});
    }
    const double dn = static_cast<double>(n_terms);
    const std::complex<double> npow =
        npow_[n_terms] * std::polar(1.0, -t * logn_[n_terms]);
    acc.add(0.5 * npow);
    acc.add(npow * dn / (s - 1.0));
    acc.add(zeta_em_tail(s, dn, npow, 1.0 + std::abs(acc.value())).first);
    return acc.value();
  }

 private:
  double c_;
  int nmax_;
  std::vector<double> logn_, npow_;
};

// Oscillation-aware panel edges on [0, T]: the integrand behaves like
// e^{it(log x + log n)} with n up to ~t/4, so the local wavelength shrinks
// logarithmically with t.
std::vector<double> panel_edges(double T, double logx) {
  std::vector<double> edges{0.0};
  double t = 0.0;
  while (t < T) {
    const double w =
        2.0 * M_PI / (std::max(logx, 0.0) + std::log(2.0 + t) + 0.25);
    t = std::min(T, t + w);
    edges.push_back(t);
  }
  return edges;
}

// make_fn(t_hi) builds the integrand used on a panel ending at t_hi, so
// panel-local evaluation parameters stay fixed inside each panel.
double integrate_line(const std::function<RealFn(double)>& make_fn, double T,
                      double logx, double tol) {
  const std::vector<double> edges = panel_edges(T, logx);
  const std::size_t npan = edges.size() - 1;
  std::vector<double> slot(npan);
  const double panel_tol = tol / static_cast<double>(npan);
  for_each_block(npan, [&](std::size_t i) {
    const RealFn f = make_fn(edges[i + 1]);
    slot[i] = adaptive_gl(f, edges[i], edges[i + 1], panel_tol, 0);
  });
  KahanReal acc;
  for (double v : slot) acc.add(v);
  return acc.value();
}

}  // namespace

double perron_kernel(double y, double c, double T) {
  if (y <= 0.0 || c <= 0.0 || T <= 0.0)
    throw DomainError("kernel: need y, c, T > 0");
  const double logy = std::log(y);
  auto make_fn = [&](double) -> RealFn {
    return [=](double t) {
      const std::complex<double> s{c, t};
      return (std::exp(s * logy) / s).real();
    };
  };
  // conjugate symmetry: integral over [-T,T] = 2 * Re integral over [0,T]
  return integrate_line(make_fn, T, std::fabs(logy), 1e-10) / M_PI;
}

PerronDelta perron_delta(const ErrorScan& scan, double x, double c,
                         double T) {
  if (x < 2.0 || std::fabs(x - std::round(x)) < 1e-9)
    throw DomainError("inversion: x must be non-integer and >= 2");
  if (c <= 0.0 || c >= 1.0) throw DomainError("inversion: need 0 < c < 1");
  if (T < 10.0) throw DomainError("inversion: need T >= 10");

  const int k = scan.k();
  const double logx = std::log(x);
  const ZetaLine zl(c, T);
  auto make_fn = [&](double t_hi) -> RealFn {
    const int nt = std::max(24, static_cast<int>(std::ceil(t_hi / 2.0)));
    return [&zl, k, logx, c, nt](double t) {
      const std::complex<double> s{c, t};
      std::complex<double> zk = 1.0;
      const std::complex<double> z = zl.eval(t, nt);
      for (int i = 0; i < k; ++i) zk *= z;
      return (zk * std::exp(s * logx) / s).real();
    };
  };
  PerronDelta out;
  out.panels = panel_edges(T, logx).size() - 1;
  out.approx =
      integrate_line(make_fn, T, logx, 1e-9) / M_PI - std::pow(-0.5, k);
  out.exact = scan.delta(x);
  return out;
}

}  // namespace divlab
