#pragma once

#include <atomic>
#include <thread>
#include <utility>
#include <vector>

namespace kr {

// Worker count: KR_THREADS environment variable when set (clamped to >= 1),
// otherwise std::thread::hardware_concurrency().
int default_thread_count();

// Runs body(i) for i in [0, n). Work is handed out in contiguous chunks via
// an atomic counter; bodies must write only to their own index's slot so the
// result is identical for every thread count.
template <typename F>
void parallel_for(long n, int threads, F&& body) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  const long chunk = 16;
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      const long begin = next.fetch_add(chunk, std::memory_order_relaxed);
      if (begin >= n) return;
      const long end = begin + chunk < n ? begin + chunk : n;
      for (long i = begin; i < end; ++i) body(i);
    }
  };
  const int nw = threads < static_cast<int>(n) ? threads : static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nw) - 1);
  for (int w = 1; w < nw; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace kr
