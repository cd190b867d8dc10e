#pragma once

#include <cmath>
#include <cstdint>

// Splittable counter-based random streams. Every consumer derives its own
// substream from (seed, tag, index) so that trials can run in any order, on
// any number of workers, and still produce bit-identical values.

namespace lrr::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer; full-avalanche mix of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream identity = hash chain over (seed, tag, index).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag,
                                    std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ tag) ^ index);
}

// Purpose tags keeping independent draws out of each other's streams.
enum Tag : std::uint64_t {
  kTagSensing = 0x5EA51ABCD0001ULL,
  kTagUStar = 0x5EA51ABCD0002ULL,
  kTagVStar = 0x5EA51ABCD0003ULL,
  kTagOmega = 0x5EA51ABCD0004ULL,
  kTagOutlier = 0x5EA51ABCD0005ULL,
  kTagRipSample = 0x5EA51ABCD0006ULL,
  kTagInit = 0x5EA51ABCD0007ULL,
  kTagTrial = 0x5EA51ABCD0008ULL,
  kTagOperatorSeed = 0x5EA51ABCD0009ULL,
};

// Counter-based generator: output j is mix64(state + j*golden), so the
// sequence is a pure function of the stream seed.
class Stream {
 public:
  explicit Stream(std::uint64_t stream_seed) : state_(stream_seed) {}

  std::uint64_t next_u64() {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1), 53-bit resolution.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log argument.
  double u01_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller on the uniform stream. Pairs are cached,
  // so n draws consume ceil(n/2)*2 uniforms.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = u01_pos();
    const double u2 = u01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  // Uniform integer in [0, bound) via 128-bit multiply-shift. Consumes exactly
  // one u64 regardless of bound.
  std::uint64_t below(std::uint64_t bound) {
    const auto wide =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
    return static_cast<std::uint64_t>(wide >> 64);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Stream substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  return Stream(substream_seed(seed, tag, index));
}

}  // namespace lrr::rng
