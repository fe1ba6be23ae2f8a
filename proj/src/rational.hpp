#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace divlab {

// Exact rational with 64-bit parts.  Exponent bounds such as 145/102 must
// round-trip through the ledger without ever touching floating point.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d < 0 ? -d : d);
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return {g ? n / g : n, g ? d / g : d};
  }

  double to_double() const { return static_cast<double>(num) / den; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational&, const Rational&) = default;

  // a/b <= c/d  <=>  a*d <= c*b  (denominators positive, values small)
  bool leq(const Rational& o) const { return num * o.den <= o.num * den; }
};

}  // namespace divlab
