#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace renyi {

/// Calls fn(i) for i in [0, count) on up to `jobs` threads. Callers write
/// results by index, so output order does not depend on scheduling.
template <class Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace renyi
