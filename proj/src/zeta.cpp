#include "zeta.hpp"

#include <cmath>

#include "bernoulli.hpp"
#include "errors.hpp"
#include "kahan.hpp"

namespace divlab {

std::pair<std::complex<double>, double> zeta_em_tail(
    std::complex<double> s, double n, std::complex<double> npow,
    double scale) {
  // Correction sum B_2v/(2v)! * s(s+1)...(s+2v-2) * N^{1-s-2v} appended to
  // the partial sum + N^{1-s}/(s-1) + N^{-s}/2 pieces.  The remainder after
  // q terms is bounded by the first omitted term times
  // |(s + 2q + 1)/(sigma + 2q + 1)|.
  KahanComplex acc;
  std::complex<double> poch = s;
  std::complex<double> nfac = npow / n;  // N^{-s-1}
  double fact = 2.0;                     // (2v)!
  double prev_mag = 1e300;
  double budget = 0.0;
  for (int v = 1; v <= 16; ++v) {
    const std::complex<double> term = kBernoulli2v[v - 1] / fact * poch * nfac;
    const double mag = std::abs(term);
    const double ratio =
        std::abs((s + (2.0 * v + 1.0)) / (s.real() + 2.0 * v + 1.0));
    if (mag >= prev_mag || mag < 1e-18 * scale || v == 16) {
      budget = mag * ratio;  // treat as first omitted
      if (mag < prev_mag && v == 16) acc.add(term);
      break;
    }
    acc.add(term);
    prev_mag = mag;
    poch *= (s + (2.0 * v - 1.0)) * (s + 2.0 * v);
    nfac /= n * n;
    fact *= (2.0 * v + 1.0) * (2.0 * v + 2.0);
  }
  return {acc.value(), budget};
}

ZetaValue zeta_em(std::complex<double> s, int terms) {
  if (std::abs(s - 1.0) < 1e-12)
    throw PoleError("zeta: evaluation at the pole s = 1");
  if (s.real() < -1.0)
    throw DomainError("zeta: sigma < -1 unsupported");

  const double t = std::fabs(s.imag());
  const int n_terms =
      terms > 0 ? terms
                : std::max(24, static_cast<int>(std::ceil(t / 2.0)));

  KahanComplex acc;
  for (int n = 1; n < n_terms; ++n)
    acc.add(std::exp(-s * std::log(static_cast<double>(n))));

  const double dn = static_cast<double>(n_terms);
  const std::complex<double> npow = std::exp(-s * std::log(dn));  // N^-s
  acc.add(0.5 * npow);
  acc.add(npow * dn / (s - 1.0));

  const auto [tail, budget] =
      zeta_em_tail(s, dn, npow, 1.0 + std::abs(acc.value()));
  acc.add(tail);
  return {acc.value(), budget};
}

ZetaValue zeta_pow(std::complex<double> s, int k, int terms) {
  if (k < 1) throw DomainError("zeta_pow: k must be >= 1");
  const ZetaValue z = zeta_em(s, terms);
  std::complex<double> v = 1.0;
  for (int i = 0; i < k; ++i) v *= z.value;
  const double mag = std::abs(z.value);
  const double d = k * std::pow(mag, k - 1) * z.budget;
  return {v, d + 1e-16 * std::abs(v)};
}

}  // namespace divlab
