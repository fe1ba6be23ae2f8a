#pragma once

#include "divisor_table.hpp"

namespace divlab {

struct ConstApprox {
  double value = 0.0;
  double budget = 0.0;  // absolute uncertainty estimate
};

// B = sum d(n)^2 n^{-3/2} = zeta^4(3/2)/zeta(3); the mean-square constant
// is A = B/(6 pi^2).
ConstApprox const_B_identity();

// Independent route: partial summation of d(n)^2 n^{-3/2} from a k=2 table
// against the exact summatory main term x Q3(log x), with the tail integral
// evaluated in closed form.  Requires limit >= 1e5.
ConstApprox const_B_direct(const DivisorTable& table2);

// C3 = (1/10pi^2) sum d_3(n)^2 n^{-4/3}, direct summation with the tail
// handled by partial summation against the exact summatory main term;
// budget is the bracket half-width from the error-term drift.
ConstApprox const_C3_direct(const DivisorTable& table3);

// Acceleration cross-check: sum d_3(n)^2 n^{-s} = zeta^9(s) H(s) with H an
// Euler product convergent for sigma > 1/2; evaluated at s = 4/3 over
// primes up to prime_limit, again divided by 10 pi^2.
double const_C3_product(int prime_limit = 100000);

}  // namespace divlab
