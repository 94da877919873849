#pragma once

#include <atomic>
#include <mutex>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nclust {

// Runs fn(0..count-1) on up to `threads` workers. Tasks must write only to
// their own output slots; results are then identical for any thread count.
inline void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn) {
  if (count == 0) return;
  const size_t workers =
      std::min<size_t>(count, threads <= 1 ? 1 : static_cast<size_t>(threads));
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace nclust
