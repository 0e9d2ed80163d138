#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace monowav {

/// Runs fn(i) for i in [0, count) across up to `threads` workers (0 = all
/// hardware cores). Work items must be independent; each item writes only its
/// own output slot, so results are identical for any thread count.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& fn) {
  unsigned n = threads > 0 ? static_cast<unsigned>(threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  if (n <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  n = std::min<std::size_t>(n, count);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += n) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace monowav
