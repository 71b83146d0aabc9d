#pragma once

#include <cstdint>
#include <random>

namespace nos {

/// SplitMix64 step: advances state by the golden gamma and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// Seed of independent stream `stream` under master seed `seed`:
/// the first SplitMix64 output from state seed ^ splitmix64-mix(stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Reproducible random stream: std::mt19937_64 (bit-exact by the standard)
/// seeded with a single 64-bit value. Uniform integers use rejection
/// sampling on raw 64-bit outputs so no library distribution is involved.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound), bound >= 1. Draws x until x < bound * floor(2^64 / bound)
  /// and returns x mod bound.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform double in [0, 1) from the top 53 bits of one draw.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nos
