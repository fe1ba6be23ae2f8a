#include "constants.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "kahan.hpp"
#include "zeta.hpp"

namespace divlab {

namespace {

// Laurent coefficients c_{-1-j} of g about s=1, as q_j = c_{-1-j}/j!,
// by trapezoid quadrature on |s-1| = 1/4 (spectrally accurate; the
// nearest obstruction is at distance 1/2, so 128 nodes is far more
// than enough).
template <typename G>
void contour_q(const G& g, int count, double* q) {
  constexpr int kNodes = 128;
  std::vector<std::complex<double>> csum(count);
  for (int i = 0; i < kNodes; ++i) {
    const double th = 2.0 * std::numbers::pi * i / kNodes;
    const std::complex<double> w = std::polar(0.25, th);
    const std::complex<double> gv = g(1.0 + w);
    std::complex<double> wp = w;
    for (int j = 0; j < count; ++j) {
      csum[j] += gv * wp;  // g * w^{1+j}
      wp *= w;
    }
  }
  double fact = 1.0;
  for (int j = 0; j < count; ++j) {
    if (j > 0) fact *= j;
    q[j] = (csum[j] / static_cast<double>(kNodes)).real() / fact;
  }
}

std::vector<int> sieve_primes(int limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<int> primes;
  for (int p = 2; p <= limit; ++p) {
    if (comp[p]) continue;
    primes.push_back(p);
    for (long long q = 1ll * p * p; q <= limit; q += p) comp[q] = true;
  }
  return primes;
}

// int_N^inf x^{-a} L^j dx = m N^{1-a} sum_{i<=j} j!/(j-i)! m^i L^{j-i}
// with m = 1/(a-1); here a = 3/2 (m=2) and a = 4/3 (m=3).
double tail_integral(double n, double m, int j) {
  const double big_l = std::log(n);
  double s = 0.0;
  double fall = 1.0;  // j!/(j-i)! m^i
  for (int i = 0; i <= j; ++i) {
    if (i > 0) fall *= m * (j - i + 1);
    s += fall * std::pow(big_l, j - i);
  }
  return m * std::pow(n, -1.0 / m) * s;
}

}  // namespace

ConstApprox const_B_identity() {
  const ZetaValue z32 = zeta_em(1.5);
  const ZetaValue z3 = zeta_em(3.0);
  const double z = z32.value.real();
  const double value = z * z * z * z / z3.value.real();
  const double budget =
      4.0 * z * z * z * z32.budget / z3.value.real() +
      value / z3.value.real() * z3.budget + 1e-14 * value;
  return {value, budget};
}

ConstApprox const_B_direct(const DivisorTable& table2) {
  if (table2.k() != 2) throw DomainError("constant B: needs a k=2 table");
  const std::uint64_t limit = table2.limit();
  if (limit < 100000) throw DomainError("constant B: needs limit >= 1e5");
  const double dn = static_cast<double>(limit);

  // Partial summation against the summatory of d(n)^2, whose main term
  // x Q3(log x) is the residue of zeta^4(s)/zeta(2s) x^s/s at s=1:
  //   B = T(N) + int_N^inf x^{-3/2}(Q3 + Q3')(log x) dx - N^{-3/2} E(N)
  //       + (3/2) int_N^inf x^{-5/2} E(x) dx,
  // with E = summatory - main term known exactly at N; the last integral
  // oscillates around zero and is carried as the budget.
  KahanReal partial;        // sum d(n)^2 n^{-3/2}
  std::uint64_t sum_d2 = 0; // summatory of d(n)^2
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const double d = static_cast<double>(table2.value(n));
    partial.add(d * d * std::pow(static_cast<double>(n), -1.5));
    sum_d2 += table2.value(n) * table2.value(n);
  }

  // q_j = c_{-1-j}/j! from the contour Laurent coefficients of
  // g(s) = zeta^4(s)/zeta(2s)/s about s = 1.
  double q[4];
  contour_q(
      [](std::complex<double> s) {
        const std::complex<double> z = zeta_em(s).value;
        return z * z * z * z / zeta_em(2.0 * s).value / s;
      },
      4, q);

  const double big_l = std::log(dn);
  const double e_n =
      static_cast<double>(sum_d2) -
      dn * (((q[3] * big_l + q[2]) * big_l + q[1]) * big_l + q[0]);

  // R = Q3 + Q3' from d/dx [x Q3(log x)]
  const double rc[4] = {q[0] + q[1], q[1] + 2.0 * q[2], q[2] + 3.0 * q[3],
                        q[3]};
  double tail_main = 0.0;
  for (int j = 0; j < 4; ++j) tail_main += rc[j] * tail_integral(dn, 2.0, j);

  const double value = partial.value() + tail_main - e_n * std::pow(dn, -1.5);
  const double budget = std::fabs(e_n) * std::pow(dn, -1.5) + 1e-9;
  return {value, budget};
}

namespace {

// H(s) = prod_p (1-p^{-s})^9 sum_k binom(k+2,2)^2 p^{-ks}, the corrective
// Euler product in sum d_3(n)^2 n^{-s} = zeta^9(s) H(s); absolutely
// convergent for sigma > 1/2.  Primes beyond the cutoff contribute
// log h_p ~ -9 p^{-2s}, folded in via the usual prime-counting majorant.
std::complex<double> euler_h(std::complex<double> s,
                             const std::vector<int>& primes) {
  std::complex<double> log_h = 0.0;
  for (int p : primes) {
    const std::complex<double> x =
        std::exp(-s * std::log(static_cast<double>(p)));
    std::complex<double> series = 0.0;
    std::complex<double> xk = 1.0;
    for (int k = 0;; ++k) {
      const double b = (k + 1.0) * (k + 2.0) / 2.0;
      const std::complex<double> term = b * b * xk;
      series += term;
      if (std::abs(term) < 1e-18 * std::abs(series)) break;
      xk *= x;
    }
    log_h += 9.0 * std::log(1.0 - x) + std::log(series);
  }
  const double pl = static_cast<double>(primes.back());
  log_h += -9.0 * std::exp((1.0 - 2.0 * s) * std::log(pl)) /
           ((2.0 * s - 1.0) * std::log(pl));
  return std::exp(log_h);
}

}  // namespace

ConstApprox const_C3_direct(const DivisorTable& table3) {
  if (table3.k() != 3) throw DomainError("constant C3: needs a k=3 table");
  const std::uint64_t limit = table3.limit();
  if (limit < 100000) throw DomainError("constant C3: needs limit >= 1e5");
  const double dn = static_cast<double>(limit);
  const std::uint64_t half = limit / 2;

  // As for B, but the summatory main term x Q8(log x) now comes from a
  // 9th-order pole.  The tail beyond the sieve limit carries ~70% of the
  // value, so the last-octave increment alone cannot bracket it; partial
  // summation against the exact main term can.
  KahanReal partial;
  std::uint64_t sum_d2 = 0, sum_d2_half = 0;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const std::uint64_t d = table3.value(n);
    partial.add(static_cast<double>(d * d) *
                std::pow(static_cast<double>(n), -4.0 / 3.0));
    sum_d2 += d * d;
    if (n == half) sum_d2_half = sum_d2;
  }

  const std::vector<int> primes = sieve_primes(100000);
  double q[9];
  contour_q(
      [&primes](std::complex<double> s) {
        const std::complex<double> z = zeta_em(s).value;
        std::complex<double> z9 = z;
        for (int i = 0; i < 8; ++i) z9 *= z;
        return z9 * euler_h(s, primes) / s;
      },
      9, q);

  auto e_at = [&q](double x, double summatory) {
    const double big_l = std::log(x);
    double poly = 0.0;
    for (int j = 8; j >= 0; --j) poly = poly * big_l + q[j];
    return summatory - x * poly;
  };
  const double e_n = e_at(dn, static_cast<double>(sum_d2));
  const double e_h =
      e_at(static_cast<double>(half), static_cast<double>(sum_d2_half));

  double rc[9];
  for (int j = 0; j < 8; ++j) rc[j] = q[j] + (j + 1) * q[j + 1];
  rc[8] = q[8];
  double tail_main = 0.0;
  for (int j = 0; j < 9; ++j) tail_main += rc[j] * tail_integral(dn, 3.0, j);

  const double scale = std::pow(dn, -4.0 / 3.0);
  const double total = partial.value() + tail_main - e_n * scale;
  // systematic offsets in E cancel against the boundary term; what is
  // left is driven by the drift of E between N/2 and N
  const double budget = 2.0 * std::fabs(e_n - e_h) * scale + 1e-8 * total;
  const double denom = 10.0 * std::numbers::pi * std::numbers::pi;
  return {total / denom, budget / denom};
}

double const_C3_product(int prime_limit) {
  if (prime_limit < 100) throw DomainError("constant C3: prime limit too low");
  const double s = 4.0 / 3.0;
  const double z = zeta_em(s).value.real();
  const double h = euler_h(s, sieve_primes(prime_limit)).real();
  const double denom = 10.0 * std::numbers::pi * std::numbers::pi;
  return std::pow(z, 9) * h / denom;
}

}  // namespace divlab
