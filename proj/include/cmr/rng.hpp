#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace cmr {

// splitmix64; fixed constants so streams are bit-identical across platforms.
inline uint64_t mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) by rejection.
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t v = next();
      if (v >= threshold) return v % bound;
    }
  }

  // Uniform in (0, 1); never returns 0 so -log stays finite.
  double next_unit() {
    uint64_t v = next() >> 11;  // 53 bits
    return (static_cast<double>(v) + 0.5) * (1.0 / 9007199254740992.0);
  }
};

// Deterministic seed derivation for keyed values and per-trial streams.
inline uint64_t derive_seed(uint64_t root, uint64_t a) { return mix64(root ^ mix64(a)); }
inline uint64_t derive_seed(uint64_t root, uint64_t a, uint64_t b) {
  return mix64(derive_seed(root, a) ^ mix64(b ^ 0x6a09e667f3bcc909ULL));
}

// Uniform m-subset of pool, returned sorted. Partial Fisher-Yates on a scratch copy.
template <typename T>
std::vector<T> draw_subset(SplitMix64& rng, std::vector<T> pool, size_t m) {
  for (size_t i = 0; i < m; i++) {
    size_t j = i + static_cast<size_t>(rng.next_below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(m);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace cmr
