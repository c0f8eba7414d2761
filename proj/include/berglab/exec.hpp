#ifndef BERGLAB_EXEC_HPP
#define BERGLAB_EXEC_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace berglab {

/// Worker count: hardware concurrency capped by the LAB_THREADS env var.
inline int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* cap = std::getenv("LAB_THREADS")) {
    int c = std::atoi(cap);
    if (c > 0) n = std::min(n, c);
  }
  return n;
}

/// Static-partition parallel loop over [0, n). body must write only to
/// slots owned by its index, so results are deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  int workers = worker_count();
  if (workers <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace berglab

#endif
