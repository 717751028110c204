#pragma once

#include <cstdint>
#include <vector>

namespace osveta {

// splitmix64: tiny, seed-stable across platforms. Used wherever reports must
// be byte-reproducible; never std::uniform_* (implementation-defined).
struct SplitMix64 {
  uint64_t state = 0x9e3779b97f4a7c15ull;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform in [0, n) via rejection.
  uint64_t bounded(uint64_t n) {
    if (n == 0) return 0;
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }
};

}  // namespace osveta
