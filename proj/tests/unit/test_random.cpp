#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>

#include "prppsm/random.hpp"

using namespace prppsm;

namespace {

// Straight transcription of the public-domain reference generators.
struct ReferenceXoshiro {
  std::array<std::uint64_t, 4> s;

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }
};

struct ReferenceSplitMix {
  std::uint64_t x;
  std::uint64_t next() {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

ReferenceXoshiro seeded_reference(std::uint64_t seed) {
  ReferenceSplitMix sm{seed};
  return ReferenceXoshiro{{sm.next(), sm.next(), sm.next(), sm.next()}};
}

}  // namespace

TEST(Random, SplitMixKnownOutput) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  ReferenceSplitMix sm{0};
  EXPECT_EQ(sm.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(0x9e3779b97f4a7c15ULL), sm.next());
}

TEST(Random, ReferenceXoshiroKnownVector) {
  ReferenceXoshiro ref{{1, 2, 3, 4}};
  EXPECT_EQ(ref.next(), 11520u);
  EXPECT_EQ(ref.next(), 0u);
  EXPECT_EQ(ref.next(), 1509978240u);
  EXPECT_EQ(ref.next(), 1215971899390074240ULL);
}

TEST(Random, MatchesReferenceStream) {
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 0xffffffffffffffffULL}) {
    Rng rng(seed);
    ReferenceXoshiro ref = seeded_reference(seed);
    for (int k = 0; k < 1000; ++k) ASSERT_EQ(rng.next(), ref.next()) << seed << " " << k;
  }
}

TEST(Random, UniformUsesTop53Bits) {
  Rng rng(9);
  ReferenceXoshiro ref = seeded_reference(9);
  for (int k = 0; k < 1000; ++k) {
    const double u = rng.uniform();
    EXPECT_EQ(u, std::ldexp(static_cast<double>(ref.next() >> 11), -53));
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Random, BelowStaysInRangeAndCoversIt) {
  Rng rng(3);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 2000; ++k) {
    const std::uint64_t v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(Random, ComplexNormalMoments) {
  Rng rng(11);
  const int n = 200000;
  const double variance = 2.5;
  double sum_re = 0.0, sum_im = 0.0, sum_norm = 0.0, sum_re2 = 0.0, sum_cross = 0.0;
  for (int k = 0; k < n; ++k) {
    const Complex z = rng.complex_normal(variance);
    sum_re += z.real();
    sum_im += z.imag();
    sum_norm += std::norm(z);
    sum_re2 += z.real() * z.real();
    sum_cross += z.real() * z.imag();
  }
  // Standard errors: mean of each part sqrt(v/2/n); E|z|^2 has sd v.
  const double se_mean = std::sqrt(variance / 2.0 / n);
  EXPECT_NEAR(sum_re / n, 0.0, 4 * se_mean);
  EXPECT_NEAR(sum_im / n, 0.0, 4 * se_mean);
  EXPECT_NEAR(sum_norm / n, variance, 4 * variance / std::sqrt(n));
  EXPECT_NEAR(sum_re2 / n, variance / 2.0, 4 * variance / 2.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(sum_cross / n, 0.0, 4 * variance / 2.0 / std::sqrt(n));
}

TEST(Random, DerivedStreamsAreDeterministicAndDistinct) {
  auto first = [](std::uint64_t m, std::uint64_t s, std::uint64_t t, StreamPurpose p) {
    return derive_stream(m, s, t, p).next();
  };
  EXPECT_EQ(first(1, 2, 3, StreamPurpose::kNoise), first(1, 2, 3, StreamPurpose::kNoise));
  std::set<std::uint64_t> values;
  for (std::uint64_t m : {1ULL, 2ULL}) {
    for (std::uint64_t s = 0; s < 4; ++s) {
      for (std::uint64_t t = 0; t < 16; ++t) {
        for (auto p : {StreamPurpose::kBits, StreamPurpose::kChannel, StreamPurpose::kNoise,
                       StreamPurpose::kPrecoder, StreamPurpose::kDetectorInit}) {
          values.insert(first(m, s, t, p));
        }
      }
    }
  }
  EXPECT_EQ(values.size(), 2u * 4u * 16u * 5u);
}
