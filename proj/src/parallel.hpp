#ifndef EB_PARALLEL_HPP
#define EB_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace eb {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Static chunked parallel loop. fn(begin, end) must only touch its own slice
// of any shared output, so results never depend on the schedule.
inline void parallel_chunks(std::size_t n, unsigned threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    fn(0, n);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t b = static_cast<std::size_t>(t) * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(fn, b, e);
  }
  for (auto& th : pool) th.join();
}

}  // namespace eb

#endif
