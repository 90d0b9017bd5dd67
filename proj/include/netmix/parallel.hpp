#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace netmix {

// Runs fn(i) for i in [0, count) across hardware threads. Items must be
// independent; callers make results deterministic by writing into
// preallocated per-index slots and reducing sequentially afterwards.
inline void parallel_for(int count, const std::function<void(int)>& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(count));
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace netmix
