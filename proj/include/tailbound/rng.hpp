#pragma once

#include <cstdint>

namespace tailbound {

// SplitMix64 finalizer (Steele/Lea/Flood). Full-avalanche mix of a 64-bit word.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-style generator: the state walks an additive orbit and every output
// is a mix of the state, so a draw depends only on (seed, stream, position).
// Substreams keyed by (seed, stream) start at unrelated phases, which is what
// the simulation layer relies on for thread-count-independent results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(mix64(seed + kGoldenGamma) ^
               mix64(stream * kGoldenGamma + 0x632BE59BD9B4E019ULL)) {}

  std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1, safe under log.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace tailbound
