#pragma once

#include <string>
#include <vector>

namespace divlab {

// Exponent bounds are stored as exact rationals so they round-trip through
// the JSON export without any floating-point detour.
struct Rational {
  long long num = 0;
  long long den = 1;

  double approx() const { return static_cast<double>(num) / den; }
  bool operator==(const Rational&) const = default;
};

// a/b <= c/d with positive denominators
bool rational_le(Rational a, Rational b);

std::string rational_str(Rational r);        // "145/102", integers as "3"
Rational rational_parse(const std::string&);  // inverse of rational_str

enum class LedgerKind { kTheta, kRho, kEta, kBeta, kSigmaC };

struct LedgerEntry {
  LedgerKind kind;
  int k;
  Rational bound;
};

// Bound for the given family and order; DomainError outside the stored
// range.  theta: k in 3..12; rho: 2..6; eta: 2..12; beta: 2..6; sigmaC: 3..6.
Rational ledger(LedgerKind kind, int k);

const std::vector<LedgerEntry>& ledger_entries();
std::string ledger_kind_name(LedgerKind kind);

// Full ledger as a JSON object {"theta": {"3": "1", ...}, ...}.
std::string ledger_json();

// theta_{2k} <= 1 + beta_k for every k with both entries stored.
bool ledger_consistent();

}  // namespace divlab
