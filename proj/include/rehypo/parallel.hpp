#pragma once

// Deterministic work partitioning. REHYPO_THREADS caps the worker count;
// bodies write results into per-index slots, so output never depends on how
// indices land on threads.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace rehypo {

inline int thread_budget(int jobs) {
  if (jobs <= 1) return 1;
  int budget = static_cast<int>(std::thread::hardware_concurrency());
  if (budget <= 0) budget = 1;
  if (const char* env = std::getenv("REHYPO_THREADS")) {
    try {
      budget = std::min(budget, std::max(1, std::stoi(env)));
    } catch (const std::exception&) {
      // unreadable cap, keep the hardware default
    }
  }
  return std::min(budget, jobs);
}

// Runs body(i) for i in [0, count) across thread_budget(count) threads.
// The first exception thrown by any body is rethrown on the caller.
template <typename Body>
void parallel_for(int count, Body&& body) {
  const int workers = thread_budget(count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }

  std::mutex error_lock;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) {
          {
            std::scoped_lock hold(error_lock);
            if (error) return;
          }
          body(i);
        }
      } catch (...) {
        std::scoped_lock hold(error_lock);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rehypo
