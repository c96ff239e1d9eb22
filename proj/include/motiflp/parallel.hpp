#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace motiflp {

// Runs f(worker_id) on `workers` threads (worker 0 on the calling thread when
// workers == 1). The first exception is rethrown after all threads join.
// Callers keep determinism by writing to disjoint, index-addressed slots.
template <typename F>
void run_workers(int workers, F&& f) {
  if (workers <= 1) {
    f(0);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::atomic_flag error_set;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        f(w);
      } catch (...) {
        if (!error_set.test_and_set()) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// Work-stealing index loop: each worker claims indices from a shared counter.
template <typename F>
void parallel_indices(std::size_t begin, std::size_t end, int workers, F&& f) {
  std::atomic<std::size_t> next{begin};
  run_workers(workers, [&](int worker) {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= end) break;
      f(worker, i);
    }
  });
}

}  // namespace motiflp
