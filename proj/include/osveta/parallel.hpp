#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace osveta {

// Deterministic data-parallel loop: each index writes only its own slots, so
// results are identical for any thread count.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::atomic<int> next{0};
  constexpr int kChunk = 64;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        int begin = next.fetch_add(kChunk);
        if (begin >= n) return;
        int end = std::min(begin + kChunk, n);
        for (int i = begin; i < end; ++i) fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

inline int default_thread_count() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace osveta
