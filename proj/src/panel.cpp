#include "panel.hpp"

#include <algorithm>

#include "errors.hpp"

namespace divlab {

void PanelExpander::prepare(double x0, double tau, double prefix_sum) {
  if (x0 < 1.0 || tau <= 0.0 || tau > x0 * 0.5 + 1e-12)
    throw DomainError("panel: need x0 >= 1 and tau <= x0/2");
  x0_ = x0;
  tau_ = tau;
  logx0_ = std::log(x0);

  // Working degree: tail ratio (tau/x0)^(J+1) must stay below 1e-19 of the
  // panel scale; 44 decimal-ish digits of margin absorb the x0*P' factor.
  const double r = tau / x0;
  cap_ = std::clamp(static_cast<int>(std::ceil(44.0 / -std::log(r))), 4, 68);

  eps_ = Poly{};
  eps_.n = cap_ + 1;
  double pw = 1.0;
  for (int i = 1; i <= cap_; ++i) {
    pw /= x0;
    eps_.c[i] = (i % 2 ? pw : -pw) / i;
  }

  // c_j = P^(j)(log x0) / j!
  std::array<double, 16> cj{};
  for (int j = 0; j <= deg_; ++j) {
    // j-th derivative of P at L, divided by j!
    double v = 0.0;
    for (int i = deg_; i >= j; --i) {
      double binom = 1.0;
      for (int b = 0; b < j; ++b) binom *= double(i - b) / (b + 1);
      v += model_.coeffs[i] * binom * std::pow(logx0_, i - j);
    }
    cj[j] = v;
  }

  const double m0 = x0 * cj[0] + model_.zeta_k0;
  dleft_ = prefix_sum - m0;

  // delta_m(t) = m(x0+t) - m(x0)
  //            = t*c0 + (x0+t) * sum_{j>=1} c_j eps(t)^j
  Poly dm{};
  dm.n = 2;
  dm.c[1] = cj[0];
  if (deg_ >= 1) {
    Poly acc{};  // sum c_j eps^j
    Poly epow = eps_;
    for (int j = 1; j <= deg_; ++j) {
      if (j > 1) epow = poly::mul(epow, eps_, cap_);
      poly::add_scaled(acc, epow, cj[j]);
    }
    Poly lin{};
    lin.n = 2;
    lin.c[0] = x0;
    lin.c[1] = 1.0;
    poly::add_scaled(dm, poly::mul(acc, lin, cap_), 1.0);
  }

  delta_ = Poly{};
  delta_.n = std::max(1, dm.n);
  delta_.c[0] = dleft_;
  for (int i = 0; i < dm.n; ++i) delta_.c[i] -= dm.c[i];
}

Poly PanelExpander::pow_delta(int p) const {
  Poly r = delta_;
  for (int i = 1; i < p; ++i) r = poly::mul(r, delta_, cap_);
  return r;
}

double PanelExpander::integral_pow(int p) const {
  return poly::integrate(pow_delta(p), tau_);
}

Poly PanelExpander::delta_antiderivative() const {
  Poly q{};
  q.n = delta_.n + 1;
  for (int i = 0; i < delta_.n; ++i) q.c[i + 1] = delta_.c[i] / (i + 1);
  return q;
}

Poly PanelExpander::pow_series(double a) const {
  Poly scaled = eps_;
  for (int i = 0; i < scaled.n; ++i) scaled.c[i] *= a;
  return poly::exp_series(scaled, cap_);
}

CPoly PanelExpander::pow_series(std::complex<double> a) const {
  CPoly scaled;
  scaled.n = eps_.n;
  for (int i = 0; i < eps_.n; ++i) scaled.c[i] = a * eps_.c[i];
  return poly::exp_series(scaled, cap_);
}

std::complex<double> PanelExpander::integral_poly_mellin(
    const Poly& q, std::complex<double> s) const {
  const CPoly w = pow_series(-s);
  const CPoly prod = poly::mul(q, w, cap_);
  const std::complex<double> front = std::exp(-s * logx0_);
  return front * poly::integrate(prod, tau_);
}

std::complex<double> PanelExpander::integral_pow_mellin(
    int p, std::complex<double> s) const {
  return integral_poly_mellin(pow_delta(p), s);
}

double PanelExpander::integral_pow_exp(int p, double big_t) const {
  // e^{-(x0+t)/T} = e^{-x0/T} * sum (-t/T)^i / i!
  Poly w{};
  w.n = 1;
  w.c[0] = 1.0;
  double term = 1.0;
  for (int i = 1; i < kPolyCap - 1; ++i) {
    term *= -1.0 / (big_t * i);
    w.c[i] = term;
    w.n = i + 1;
    if (std::fabs(term) < 1e-22) break;
  }
  const Poly prod = poly::mul(pow_delta(p), w, std::min(cap_ + 16, kPolyCap - 2));
  return std::exp(-x0_ / big_t) * poly::integrate(prod, tau_);
}

}  // namespace divlab
