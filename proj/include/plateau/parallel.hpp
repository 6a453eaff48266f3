#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace plateau {

/// Worker count: set_worker_count() override, else PLATEAU_THREADS, else hardware threads.
unsigned worker_count();
void set_worker_count(unsigned workers);  // 0 restores the default

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// fn(begin, end, worker_index). Chunk boundaries depend only on the worker
/// count; callers reduce per-worker results in worker order.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    fn(std::uint64_t{0}, count, 0u);
    return;
  }
  if (workers > count) workers = static_cast<unsigned>(count);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    threads.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace plateau
