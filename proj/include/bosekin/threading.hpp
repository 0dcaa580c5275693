#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace bosekin {

/// Static block partition of [0, n) over worker threads. Each index is
/// processed exactly once; results must go to disjoint slots so the
/// parallelization cannot change any summation order.
inline void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (t == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  if (t > n) t = n;
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(n) * w / t);
    const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / t);
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace bosekin
