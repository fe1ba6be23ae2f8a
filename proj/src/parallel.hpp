// Deterministic block-parallel execution.
//
// Work is cut into a fixed number of blocks that does not depend on the
// thread count; workers grab blocks from an atomic counter and write their
// result into a per-block slot.  The caller combines slots in block order,
// so the reduction tree (and hence every rounding decision) is identical
// for 1, 4 or 64 workers.

#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace divlab {

inline int& worker_count() {
  static int n = 1;
  return n;
}

inline void set_worker_count(int n) { worker_count() = n < 1 ? 1 : n; }

// fn(block_index) is called exactly once per block, possibly concurrently.
template <typename Fn>
void for_each_block(std::size_t nblocks, Fn&& fn) {
  const int nthreads = worker_count();
  if (nthreads <= 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      fn(b);
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(nthreads), nblocks));
  pool.reserve(spawn);
  for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace divlab
