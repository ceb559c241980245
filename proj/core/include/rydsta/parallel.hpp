#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rydsta {

// Runs fn(i) for i in [0, count) on up to n_threads workers. Exceptions are
// captured and the first one rethrown after all workers join. n_threads <= 1
// (or count <= 1) degrades to a plain loop; results must be written to
// pre-sized slots so output order never depends on scheduling.
inline void parallel_for(int count, int n_threads, const std::function<void(int)>& fn) {
  if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  if (count <= 1 || n_threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex err_mutex;
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(n_threads, count);
  pool.reserve(n);
  for (int k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rydsta
