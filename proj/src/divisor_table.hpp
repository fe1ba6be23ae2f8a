#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace divlab {

// Sieved table of the Piltz divisor function d_k(n), n = 1..limit.
// Values are exact non-negative integers; the table is immutable after
// construction and safe to share across threads.
class DivisorTable {
 public:
  // Builds d_k(1..limit) by (k-1)-fold Dirichlet convolution with the
  // all-ones sequence.  O(limit log limit) additions per pass.
  // Throws CapacityError if 8*limit bytes exceed memory_budget_bytes,
  // OverflowError if any entry would exceed the 64-bit range.
  static DivisorTable build(int k, std::uint64_t limit,
                            std::uint64_t memory_budget_bytes = kDefaultBudget);

  static DivisorTable load(const std::string& path);
  void save(const std::string& path) const;

  int k() const { return k_; }
  std::uint64_t limit() const { return limit_; }

  std::uint64_t value(std::uint64_t n) const { return values_[n - 1]; }
  const std::vector<std::uint64_t>& values() const { return values_; }

  // Sum_{n <= x} d_k(n), with the last term halved when x is an integer
  // (the primed-sum convention).  halve_at_integer=false gives the plain
  // unprimed sum.
  double summatory(double x, bool halve_at_integer = true) const;

  // Exact unprimed prefix sum over n <= m.
  std::uint64_t prefix(std::uint64_t m) const;

  static constexpr std::uint64_t kDefaultBudget = 6ull << 30;  // 6 GiB

 private:
  DivisorTable(int k, std::uint64_t limit, std::vector<std::uint64_t> values)
      : k_(k), limit_(limit), values_(std::move(values)) {}

  int k_ = 1;
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> values_;
};

}  // namespace divlab
