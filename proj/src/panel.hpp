// Panel-exact integration of powers of the error term.
//
// Between consecutive integers the divisor sum is constant, so on a panel
// [x0, x0+tau] (tau <= 1) the error term is
//
//   Delta(u) = S - u P(log u) - zeta^k(0),   S = sum_{n <= x0} d_k(n).
//
// Writing u = x0 + t and eps(t) = log(1 + t/x0), the polynomial P expands
// exactly about log x0 (finitely many derivatives), and eps is replaced by
// its Taylor polynomial of degree J with J chosen so the discarded tail is
// below 1e-17 of the panel scale.  Everything downstream is then honest
// polynomial arithmetic in t: powers of Delta, antiderivatives, and the
// x^{-s} / e^{-x/T} weights (their log-series composed the same way).
// Working centered at x0 keeps all operands panel-sized; forming the
// integrals from antiderivatives of u^a log^q u at u ~ 1e7 would lose
// eight digits to cancellation.
//
// The only panel the expansion cannot handle in one piece is [1, 2]
// (ratio t/x0 reaches 1); callers split it at 1.5.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

#include "mainterm.hpp"

namespace divlab {

constexpr int kPolyCap = 96;

template <typename T>
struct PolyT {
  int n = 0;  // coefficient count; value = sum c[i] t^i
  std::array<T, kPolyCap> c{};

  T eval(double t) const {
    T v{};
    for (int i = n; i-- > 0;) v = v * t + c[i];
    return v;
  }
};

using Poly = PolyT<double>;
using CPoly = PolyT<std::complex<double>>;

namespace poly {

template <typename T, typename U>
auto mul(const PolyT<T>& a, const PolyT<U>& b, int cap)
    -> PolyT<decltype(T{} * U{})> {
  PolyT<decltype(T{} * U{})> r;
  if (a.n == 0 || b.n == 0) return r;
  r.n = std::min(a.n + b.n - 1, cap + 1);
  for (int i = 0; i < a.n; ++i) {
    if (i >= r.n) break;
    for (int j = 0; j < b.n && i + j < r.n; ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

template <typename T>
void add_scaled(PolyT<T>& a, const PolyT<T>& b, T scale) {
  if (b.n > a.n) a.n = b.n;
  for (int i = 0; i < b.n; ++i) a.c[i] += scale * b.c[i];
}

// integral_0^tau p(t) dt
template <typename T>
T integrate(const PolyT<T>& p, double tau) {
  T v{};
  for (int i = p.n; i-- > 0;) v = (v + p.c[i] / double(i + 1)) * tau;
  return v;
}

// exp(q(t)) truncated, q(0) == 0 required.
template <typename T>
PolyT<T> exp_series(const PolyT<T>& q, int cap) {
  PolyT<T> r;
  r.n = 1;
  r.c[0] = T{1};
  PolyT<T> power;
  power.n = 1;
  power.c[0] = T{1};
  double inv_fact = 1.0;
  for (int i = 1; i <= cap + 30; ++i) {
    power = mul(power, q, cap);
    inv_fact /= i;
    double mag = 0.0;
    for (int j = 0; j < power.n; ++j) mag = std::max(mag, std::abs(power.c[j]));
    add_scaled(r, power, T{1} * inv_fact);
    if (mag * inv_fact < 1e-19) break;
  }
  return r;
}

}  // namespace poly

// Expansion of Delta and related weights on one panel.
class PanelExpander {
 public:
  explicit PanelExpander(const MainTermModel& model) : model_(model) {
    // dP/du coefficients for all derivative orders, filled per panel.
    deg_ = static_cast<int>(model.coeffs.size()) - 1;
  }

  // S = unprimed prefix sum of d_k at floor(x0) (left-limit constant).
  void prepare(double x0, double tau, double prefix_sum);

  double x0() const { return x0_; }
  double tau() const { return tau_; }
  int cap() const { return cap_; }
  double delta_left() const { return dleft_; }
  const Poly& delta() const { return delta_; }

  // integral_0^tau Delta^p dt, p in {1,2,3,4}
  double integral_pow(int p) const;

  // Antiderivative poly Q of Delta with Q(0)=0 (running I1 inside panel).
  Poly delta_antiderivative() const;

  // integral_0^tau Delta^p (x0+t)^{-s} dt
  std::complex<double> integral_pow_mellin(int p, std::complex<double> s) const;

  // integral_0^tau Delta^p e^{-(x0+t)/T} dt
  double integral_pow_exp(int p, double big_t) const;

  // Taylor poly of (1 + t/x0)^a (no x0^a factor).
  Poly pow_series(double a) const;
  CPoly pow_series(std::complex<double> a) const;

  // integral_0^tau q(t) (x0+t)^{-s} dt for an arbitrary panel poly q.
  std::complex<double> integral_poly_mellin(const Poly& q,
                                            std::complex<double> s) const;

  Poly pow_delta(int p) const;

 private:
  const MainTermModel& model_;
  int deg_ = 0;
  double x0_ = 1, tau_ = 1, logx0_ = 0, dleft_ = 0;
  int cap_ = 8;
  Poly eps_;    // Taylor of log(1 + t/x0)
  Poly delta_;  // Delta(x0 + t)
};

}  // namespace divlab
