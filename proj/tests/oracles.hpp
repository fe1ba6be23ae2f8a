// Slow, independent reference implementations used only by tests.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// d_k(n) by direct recursion over divisors: number of ordered k-tuples
// with product n.  Exponential-ish, fine for n up to a few thousand.
inline std::uint64_t dk(int k, std::uint64_t n) {
  if (k == 1) return 1;
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    total += dk(k - 1, n / d);
    if (d != n / d) total += dk(k - 1, d);
  }
  return total;
}

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double whole,
                                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  // the 1e-14*|value| term keeps the recursion above the rounding noise
  // floor of the Simpson sums themselves
  const double thresh =
      15.0 * tol + 1e-14 * (std::fabs(left) + std::fabs(right));
  if (depth > 30 || std::fabs(left + right - whole) < thresh)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth + 1) +
         adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth + 1);
}

// Adaptive Simpson; assumes f smooth on [a,b] (callers must split at the
// integer jumps of the divisor sum themselves).
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
  if (b <= a) return 0.0;
  return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 0);
}

inline std::complex<double> integrate_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol = 1e-13) {
  const auto re = integrate([&](double t) { return f(t).real(); }, a, b, tol);
  const auto im = integrate([&](double t) { return f(t).imag(); }, a, b, tol);
  return {re, im};
}

// zeta(s) for Re s > 0, s != 1, via Borwein's eta-function algorithm
// (Chebyshev weights, n terms give roughly 0.58*n digits).
inline std::complex<double> zeta(std::complex<double> s, int n = 64) {
  std::vector<double> d(n + 1);
  double acc = 0.0;
  double term = 1.0;  // n! / (n! * 0! * 1) initial: k = 0 term of the sum
  // d_j = n * sum_{i=0..j} (n+i-1)! 4^i / ((n-i)! (2i)!)
  for (int j = 0; j <= n; ++j) {
    if (j > 0)
      term *= 4.0 * (n + j - 1.0) * (n - j + 1.0) / ((2.0 * j) * (2.0 * j - 1.0));
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

// Laurent coefficient extraction for zeta^k about s = 1: trapezoid rule on
// a circle of radius r (analytic integrand, spectrally accurate).
// Returns c[j] multiplying (s-1)^(j-k), j = 0..count-1.
inline std::vector<double> zeta_pow_laurent(int k, int count, double r = 0.25,
                                            int nodes = 512) {
  std::vector<double> out(count, 0.0);
  for (int j = 0; j < count; ++j) {
    std::complex<double> sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double th = 2.0 * M_PI * i / nodes;
      const std::complex<double> w = std::polar(r, th);
      std::complex<double> zk = 1.0;
      const std::complex<double> z = zeta(1.0 + w);
      for (int p = 0; p < k; ++p) zk *= z;
      // zeta^k = sum c_j w^{j-k}; coefficient of w^{j-k}:
      sum += zk * std::exp(-(static_cast<double>(j - k)) * std::log(w));
    }
    out[j] = (sum / static_cast<double>(nodes)).real();
  }
  return out;
}

// Residue of zeta^k(s) x^s / s at s = 1 by the same contour.
inline double residue_main_term(int k, double x, double r = 0.25,
                                int nodes = 2048) {
  std::complex<double> sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double th = 2.0 * M_PI * i / nodes;
    const std::complex<double> w = std::polar(r, th);
    const std::complex<double> s = 1.0 + w;
    std::complex<double> zk = 1.0;
    const std::complex<double> z = zeta(s);
    for (int p = 0; p < k; ++p) zk *= z;
    sum += zk * std::exp(s * std::log(x)) / s * w;  // f(s) * w = f dw/(i dth) scale
  }
  return (sum / static_cast<double>(nodes)).real();
}

}  // namespace oracle
