#pragma once

#include <array>
#include <cstdint>

#include "prppsm/numerics.hpp"

namespace prppsm {

/// SplitMix64 output function applied to `x + 0x9e3779b97f4a7c15`.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// xoshiro256** 1.0 seeded by four consecutive SplitMix64 outputs.
///
/// All derived variates are computed with explicit formulas (no
/// <random> distributions), so a given seed produces the same integer
/// stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, n), n > 0, by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint8_t bit() noexcept { return static_cast<std::uint8_t>(next() >> 63); }

  /// Circularly symmetric complex Gaussian with E|z|^2 = variance
  /// (Box-Muller on one pair of uniforms).
  Complex complex_normal(double variance) noexcept;

 private:
  std::array<std::uint64_t, 4> s_;
};

enum class StreamPurpose : std::uint64_t {
  kBits = 1,
  kChannel = 2,
  kNoise = 3,
  kPrecoder = 4,
  kDetectorInit = 5,
};

/// Independent stream keyed by (master_seed, snr_index, trial_index,
/// purpose). Keys are folded through SplitMix64 one at a time.
Rng derive_stream(std::uint64_t master_seed, std::uint64_t snr_index, std::uint64_t trial_index,
                  StreamPurpose purpose) noexcept;

}  // namespace prppsm
