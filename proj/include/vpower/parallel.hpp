#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vpower {

/// Worker count used when callers pass 0: VPOWER_WORKERS if set, otherwise
/// the hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("VPOWER_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs task(worker, item) for every item in [0, items), pulling items from a
/// shared counter. The first exception thrown by any task is rethrown.
template <class Task>
void parallel_for(int items, int workers, Task&& task) {
  if (workers <= 0) workers = default_workers();
  workers = std::max(1, std::min(workers, items));
  if (workers == 1) {
    for (int i = 0; i < items; ++i) task(0, i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < items; i = next++) task(w, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = items;
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace vpower
