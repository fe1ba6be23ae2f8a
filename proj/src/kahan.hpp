// Compensated (Kahan-Neumaier) accumulation.  All running sums in the
// library go through one of these so that CSV outputs are reproducible
// bit-for-bit regardless of how many worker threads produced the blocks.

#pragma once

#include <cmath>
#include <complex>

namespace divlab {

struct KahanReal {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  // Merges another accumulator; order of merges must be fixed by the caller.
  void merge(const KahanReal& other) {
    add(other.sum);
    comp += other.comp;
  }

  double value() const { return sum + comp; }
};

struct KahanComplex {
  KahanReal re, im;

  void add(std::complex<double> v) {
    re.add(v.real());
    im.add(v.imag());
  }
  void merge(const KahanComplex& other) {
    re.merge(other.re);
    im.merge(other.im);
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

}  // namespace divlab
