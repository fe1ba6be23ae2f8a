#include "ledger.hpp"

#include <json.hpp>

#include "errors.hpp"

namespace divlab {
namespace {

// theta_k: int_1^x Delta_k << x^theta; theta_k <= 3/2 - 1/k for 4 <= k <= 8
const std::vector<LedgerEntry> kEntries = {
    {LedgerKind::kTheta, 3, {1, 1}},     {LedgerKind::kTheta, 4, {5, 4}},
    {LedgerKind::kTheta, 5, {13, 10}},   {LedgerKind::kTheta, 6, {4, 3}},
    {LedgerKind::kTheta, 7, {19, 14}},   {LedgerKind::kTheta, 8, {11, 8}},
    {LedgerKind::kTheta, 9, {145, 102}}, {LedgerKind::kTheta, 10, {29, 20}},
    {LedgerKind::kTheta, 11, {157, 106}}, {LedgerKind::kTheta, 12, {3, 2}},
    // rho_k: int_1^X (int_1^x Delta_k)^2 << X^rho; k = 2 is the settled
    // X^{5/2} case
    {LedgerKind::kRho, 2, {5, 2}},       {LedgerKind::kRho, 3, {3, 1}},
    {LedgerKind::kRho, 4, {13, 4}},      {LedgerKind::kRho, 5, {17, 5}},
    {LedgerKind::kRho, 6, {7, 2}},
    // eta_k = 1/2 - 1/k for 2 <= k <= 8; beyond that from ninth through
    // twelfth zeta moments
    {LedgerKind::kEta, 2, {0, 1}},       {LedgerKind::kEta, 3, {1, 6}},
    {LedgerKind::kEta, 4, {1, 4}},       {LedgerKind::kEta, 5, {3, 10}},
    {LedgerKind::kEta, 6, {1, 3}},       {LedgerKind::kEta, 7, {5, 14}},
    {LedgerKind::kEta, 8, {3, 8}},       {LedgerKind::kEta, 9, {43, 102}},
    {LedgerKind::kEta, 10, {9, 20}},     {LedgerKind::kEta, 11, {51, 106}},
    {LedgerKind::kEta, 12, {1, 2}},
    // beta_k: mean-square exponent; equality with (k-1)/(2k) known for
    // k = 2, 3, 4, upper bounds cited for 5, 6
    {LedgerKind::kBeta, 2, {1, 4}},      {LedgerKind::kBeta, 3, {1, 3}},
    {LedgerKind::kBeta, 4, {3, 8}},      {LedgerKind::kBeta, 5, {9, 20}},
    {LedgerKind::kBeta, 6, {1, 2}},
    // sigmaC: admissible c_k = (k-3)/(2k) (trivially 0 for k = 3, 4)
    {LedgerKind::kSigmaC, 3, {0, 1}},    {LedgerKind::kSigmaC, 4, {0, 1}},
    {LedgerKind::kSigmaC, 5, {1, 5}},    {LedgerKind::kSigmaC, 6, {1, 4}},
};

}  // namespace

bool rational_le(Rational a, Rational b) {
  return a.num * b.den <= b.num * a.den;
}

std::string rational_str(Rational r) {
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

Rational rational_parse(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return {std::stoll(s), 1};
    Rational r{std::stoll(s.substr(0, slash)),
               std::stoll(s.substr(slash + 1))};
    if (r.den <= 0) throw DomainError("rational_parse: denominator <= 0");
    return r;
  } catch (const std::invalid_argument&) {
    throw DomainError("rational_parse: not a rational: " + s);
  } catch (const std::out_of_range&) {
    throw DomainError("rational_parse: out of range: " + s);
  }
}

Rational ledger(LedgerKind kind, int k) {
  for (const LedgerEntry& e : kEntries)
    if (e.kind == kind && e.k == k) return e.bound;
  throw DomainError("ledger: no stored bound for " + ledger_kind_name(kind) +
                    " at k = " + std::to_string(k));
}

const std::vector<LedgerEntry>& ledger_entries() { return kEntries; }

std::string ledger_kind_name(LedgerKind kind) {
  switch (kind) {
    case LedgerKind::kTheta: return "theta";
    case LedgerKind::kRho: return "rho";
    case LedgerKind::kEta: return "eta";
    case LedgerKind::kBeta: return "beta";
    case LedgerKind::kSigmaC: return "sigmaC";
  }
  return "?";
}

std::string ledger_json() {
  nlohmann::json j;
  for (const LedgerEntry& e : kEntries)
    j[ledger_kind_name(e.kind)][std::to_string(e.k)] = rational_str(e.bound);
  return j.dump(2);
}

bool ledger_consistent() {
  for (const LedgerEntry& e : kEntries) {
    if (e.kind != LedgerKind::kBeta) continue;
    bool have_theta = false;
    for (const LedgerEntry& t : kEntries)
      if (t.kind == LedgerKind::kTheta && t.k == 2 * e.k) have_theta = true;
    if (!have_theta) continue;
    const Rational theta = ledger(LedgerKind::kTheta, 2 * e.k);
    const Rational one_plus{e.bound.den + e.bound.num, e.bound.den};
    if (!rational_le(theta, one_plus)) return false;
  }
  return true;
}

}  // namespace divlab
