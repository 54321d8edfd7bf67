#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace mpclu {

/// Runs body(i) for i in [begin, end) on up to `threads` threads using a
/// static contiguous partition. Work per index never depends on the
/// partition, so results are independent of the thread count.
template <typename Body>
void parallel_for(int threads, std::size_t begin, std::size_t end, Body&& body) {
  const std::size_t n = end > begin ? end - begin : 0;
  const std::size_t workers = std::min<std::size_t>(threads > 1 ? static_cast<std::size_t>(threads) : 1, n);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers - 1);
  auto run = [&](std::size_t w) {
    const std::size_t lo = begin + n * w / workers, hi = begin + n * (w + 1) / workers;
    try {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Runs independent tasks, at most `threads` at a time.
inline void parallel_invoke(int threads, const std::vector<std::function<void()>>& tasks) {
  parallel_for(threads, 0, tasks.size(), [&](std::size_t i) { tasks[i](); });
}

}  // namespace mpclu
