#pragma once

#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qidm {

// QIDM_NUM_THREADS caps internal parallelism; unset means hardware concurrency.
inline std::size_t max_threads() {
  if (const char* env = std::getenv("QIDM_NUM_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Deterministic: every index is processed exactly once and workers only write
// to index-owned slots; the result does not depend on the thread count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::min(max_threads(), n == 0 ? std::size_t(1) : n);
  if (workers <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qidm
