#pragma once

#include <complex>
#include <utility>

namespace divlab {

struct ZetaValue {
  std::complex<double> value;
  double budget = 0.0;  // bound on truncation error, rounding not included
};

// Riemann zeta by Euler-Maclaurin summation, reliable for sigma >= -1 and
// |t| up to ~1e5 in double precision.  Throws PoleError within 1e-12 of
// s = 1 and DomainError outside the supported strip.
// terms = 0 picks N automatically from |t|.
ZetaValue zeta_em(std::complex<double> s, int terms = 0);

// zeta(s)^k with a first-order error budget propagated from zeta_em.
ZetaValue zeta_pow(std::complex<double> s, int k, int terms = 0);

// Euler-Maclaurin correction terms beyond
//   sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
// given npow = N^{-s}.  Returns (correction sum, remainder bound); scale
// sets the relative cutoff for dropping negligible terms.
std::pair<std::complex<double>, double> zeta_em_tail(std::complex<double> s,
                                                     double n,
                                                     std::complex<double> npow,
                                                     double scale = 1.0);

}  // namespace divlab
