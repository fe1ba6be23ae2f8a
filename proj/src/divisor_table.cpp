#include "divisor_table.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

#include "errors.hpp"

namespace divlab {

namespace {

// FNV-1a over the raw little-endian value bytes.
std::uint64_t fnv1a(const std::uint64_t* data, std::size_t count) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t v = data[i];
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

constexpr char kMagic[4] = {'D', 'K', 'T', 'B'};
constexpr std::uint32_t kFormatVersion = 1;

struct Header {
  char magic[4];
  std::uint32_t version;
  std::uint64_t k;
  std::uint64_t limit;
  std::uint64_t checksum;
};
static_assert(sizeof(Header) == 32);

}  // namespace

DivisorTable DivisorTable::build(int k, std::uint64_t limit,
                                 std::uint64_t memory_budget_bytes) {
  if (k < 1) throw DomainError("divisor table: k must be >= 1");
  if (limit < 1) throw DomainError("divisor table: limit must be >= 1");
  // Build needs the output array plus one scratch array of equal size.
  const std::uint64_t need = 2 * 8 * limit;
  if (need > memory_budget_bytes)
    throw CapacityError("divisor table: " + std::to_string(need) +
                        " bytes exceed memory budget of " +
                        std::to_string(memory_budget_bytes));

  std::vector<std::uint64_t> cur(limit, 1);  // d_1 == 1
  if (k > 1) {
    std::vector<std::uint64_t> next(limit);
    for (int pass = 2; pass <= k; ++pass) {
      std::memset(next.data(), 0, limit * sizeof(std::uint64_t));
      for (std::uint64_t i = 1; i <= limit; ++i) {
        const std::uint64_t di = cur[i - 1];
        for (std::uint64_t m = i; m <= limit; m += i) {
          const std::uint64_t prev = next[m - 1];
          next[m - 1] = prev + di;
          if (next[m - 1] < prev)
            throw OverflowError("divisor table: d_k overflow at n=" +
                                std::to_string(m));
        }
      }
      cur.swap(next);
    }
  }
  return DivisorTable(k, limit, std::move(cur));
}

std::uint64_t DivisorTable::prefix(std::uint64_t m) const {
  if (m > limit_) throw DomainError("divisor table: prefix beyond limit");
  std::uint64_t s = 0;
  for (std::uint64_t n = 1; n <= m; ++n) s += values_[n - 1];
  return s;
}

double DivisorTable::summatory(double x, bool halve_at_integer) const {
  if (x < 1.0) return 0.0;
  if (x > static_cast<double>(limit_))
    throw DomainError("summatory: x exceeds sieve limit");
  const auto m = static_cast<std::uint64_t>(std::floor(x));
  const std::uint64_t full = prefix(m);
  double s = static_cast<double>(full);
  if (halve_at_integer && x == std::floor(x))
    s -= 0.5 * static_cast<double>(values_[m - 1]);
  return s;
}

void DivisorTable::save(const std::string& path) const {
  Header h{};
  std::memcpy(h.magic, kMagic, 4);
  h.version = kFormatVersion;
  h.k = static_cast<std::uint64_t>(k_);
  h.limit = limit_;
  h.checksum = fnv1a(values_.data(), values_.size());

  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
      std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!f) throw IoError("cannot open for writing: " + path);
  if (std::fwrite(&h, sizeof h, 1, f.get()) != 1 ||
      std::fwrite(values_.data(), sizeof(std::uint64_t), values_.size(),
                  f.get()) != values_.size())
    throw IoError("short write: " + path);
}

DivisorTable DivisorTable::load(const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
      std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!f) throw IoError("cannot open: " + path);
  Header h{};
  if (std::fread(&h, sizeof h, 1, f.get()) != 1)
    throw IoError("truncated header: " + path);
  if (std::memcmp(h.magic, kMagic, 4) != 0 || h.version != kFormatVersion)
    throw IoError("bad magic/version: " + path);
  std::vector<std::uint64_t> values(h.limit);
  if (std::fread(values.data(), sizeof(std::uint64_t), values.size(),
                 f.get()) != values.size())
    throw IoError("truncated data: " + path);
  if (fnv1a(values.data(), values.size()) != h.checksum)
    throw IoError("checksum mismatch: " + path);
  return DivisorTable(static_cast<int>(h.k), h.limit, std::move(values));
}

}  // namespace divlab
