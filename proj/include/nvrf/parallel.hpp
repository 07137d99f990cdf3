#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace nvrf {

/// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks;
/// each index writes only its own slot, so results are identical for any
/// thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn &&fn) {
  if (threads <= 1 || n < 2048) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int nt = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto &th : pool) th.join();
}

} // namespace nvrf
