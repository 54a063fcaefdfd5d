#pragma once

#include <cstdint>
#include <string_view>

namespace secamp {

/// Counter-based generator built on the splitmix64 mixing function.
///
/// Stream splitting rule: a stream is identified by (master_seed, tag,
/// index). `derive_stream` hashes the three into a fresh seed, so trial t
/// always sees the same values no matter how work is batched or reordered.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  uint64_t next_below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  /// Uniform double in [0, 1).
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= uint8_t(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline SplitMix64 derive_stream(uint64_t master_seed, std::string_view tag, uint64_t index) {
  SplitMix64 mixer(master_seed ^ fnv1a(tag));
  uint64_t s = mixer.next();
  s ^= index * 0x9e3779b97f4a7c15ULL;
  SplitMix64 mixer2(s);
  return SplitMix64(mixer2.next());
}

}  // namespace secamp
