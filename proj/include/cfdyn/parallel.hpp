#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cfdyn {

/// Worker count: set_thread_count() override, else CFDYN_THREADS, else the
/// hardware concurrency.
std::size_t thread_count();
/// 0 restores the default.
void set_thread_count(std::size_t n);

/// Calls f(i) for i in [0, n) on up to thread_count() workers. Callers write
/// to per-index slots and merge in index order, so results do not depend on
/// scheduling. The first exception thrown by any f is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cfdyn
