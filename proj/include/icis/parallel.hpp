#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <future>
#include <thread>
#include <vector>

namespace icis {

/// Runs body(i) for i in [0, n) on up to hardware_concurrency workers. Results must be
/// written to per-index slots by the caller, which keeps the output order deterministic.
/// The first exception (lowest index) is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::future<void>> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, work));
  work();
  for (auto& f : pool) f.get();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace icis
