#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace frontflow {

/// Worker count for sweep-style parallel loops: the FRONTFLOW_WORKERS
/// environment variable wins, otherwise hardware concurrency, clamped to [1,8].
inline int default_worker_count() {
  if (const char* env = std::getenv("FRONTFLOW_WORKERS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 64);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

/// Run tasks[0..n) on a bounded pool. Exceptions are captured and the first
/// one rethrown after all workers join, so partial failures cannot leak
/// detached threads. Task order of completion is irrelevant to callers, who
/// index results by task id.
inline void run_parallel(std::size_t task_count,
                         const std::function<void(std::size_t)>& task,
                         int workers = 0) {
  if (workers <= 0) workers = default_worker_count();
  workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), task_count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < task_count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < task_count;
             i = next.fetch_add(1))
          task(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace frontflow
