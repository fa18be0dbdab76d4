#ifndef RADEBOUNDS_PARALLEL_HPP
#define RADEBOUNDS_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace rade {

inline unsigned resolve_threads(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Run fn(begin, end) over disjoint chunks of [0, count). Results must be
// merged by the caller with order-independent reductions.
template <typename Fn>
void parallel_chunks(std::uint64_t count, int threads, Fn&& fn) {
  unsigned workers = resolve_threads(threads);
  if (workers <= 1 || count < 2 * workers) {
    fn(std::uint64_t{0}, count);
    return;
  }
  std::uint64_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t begin = w * chunk;
    if (begin >= count) break;
    std::uint64_t end = begin + chunk < count ? begin + chunk : count;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rade

#endif
