#ifndef RADEBOUNDS_RNG_HPP
#define RADEBOUNDS_RNG_HPP

#include <cstdint>
#include <span>

namespace rade {

// SplitMix64 finalizer. Used both as a sequential generator and as a
// stateless mixing function for counter-based streams, so that any value
// is reproducible from (seed, counter) alone.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derive an independent stream seed, e.g. one per trial or per matrix cell.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed ^ mix64(counter));
}

// Rademacher sign for cell (row, col), independent of traversal order.
inline int rademacher_sign(std::uint64_t seed, std::uint64_t row, std::uint64_t col) {
  std::uint64_t cell = mix64(row * 0x9e3779b97f4a7c15ULL + col);
  return (mix64(seed ^ cell) & 1u) ? 1 : -1;
}

// Small sequential generator with platform-independent output.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n); the modulo bias is negligible for the small n used here.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Index drawn according to nonnegative weights summing to ~1.
  std::size_t pick_weighted(std::span<const double> weights) {
    double u = next_double();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return i;
    }
    return weights.size() - 1;
  }

 private:
  std::uint64_t state_;
};

}  // namespace rade

#endif
