#pragma once

#include <cstdint>

namespace spheremix {

/// Counter-based splittable random stream. Draw j of stream i under seed s
/// is a fixed avalanche hash of (s, i, j), so trajectory i's stream is
/// independent of scheduling and of how many draws other streams consume.
class SplitStream {
 public:
  SplitStream(uint64_t seed, uint64_t stream)
      : seed_(seed), stream_(stream), counter_(0) {}

  uint64_t next_u64() {
    uint64_t h = mix(counter_++ + 0x9E3779B97F4A7C15ULL);
    h = mix(h ^ stream_key());
    return h;
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform angle in [0, 2*pi).
  double next_angle() {
    return next_unit() * 6.283185307179586476925286766559;
  }

 private:
  uint64_t stream_key() const {
    // Cached would be faster but this stays pure and obviously correct.
    return mix(seed_ ^ mix(stream_ + 0xD1B54A32D192ED03ULL));
  }

  // SplitMix64 finalizer: a bijective avalanche mix on 64 bits.
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t seed_;
  uint64_t stream_;
  uint64_t counter_;
};

}  // namespace spheremix
