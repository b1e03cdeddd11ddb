#pragma once

#include <cmath>
#include <cstdint>

// SplitMix64 generator with hash-derived substreams. Replicate r of an
// experiment seeded with s always draws from substream(s, r), so parallel
// runs are reproducible regardless of scheduling.

namespace fusionscale {

class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ull; }

  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 0x632be59bd9b4e019ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(hash_combine(seed, index));
}

// Uniform double in [0, 1), 53 mantissa bits.
inline double uniform01(SplitMix64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform_range(SplitMix64& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(SplitMix64& g, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = g();
    if (r >= threshold) return r % n;
  }
}

// Exact Poisson draw. Large means are split into blocks small enough for
// the product-of-uniforms method (Poisson additivity keeps this exact).
inline std::uint64_t sample_poisson_count(SplitMix64& g, double mean) {
  std::uint64_t total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double block = remaining > 32.0 ? 32.0 : remaining;
    remaining -= block;
    const double limit = std::exp(-block);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01(g);
    } while (p > limit);
    total += k - 1;
  }
  return total;
}

}  // namespace fusionscale
