#include <gtest/gtest.h>

#include <cmath>

#include "prppsm/channel.hpp"
#include "prppsm/error.hpp"
#include "prppsm/precoder.hpp"
#include "prppsm/sm_codec.hpp"
#include "test_util.hpp"

using namespace prppsm;
using prppsm::test::max_abs_diff;

TEST(Channel, NoiseVarianceConvention) {
  EXPECT_DOUBLE_EQ(noise_variance(0.0), 1.0);
  EXPECT_NEAR(noise_variance(10.0), 0.1, 1e-15);
  EXPECT_NEAR(noise_variance(-3.0), std::pow(10.0, 0.3), 1e-12);
}

TEST(Channel, ConfigValidation) {
  Rng rng(1);
  EXPECT_THROW(draw_channel(ChannelConfig{0, 1, 1, 0.0}, rng), ConfigError);
  EXPECT_THROW(draw_channel(ChannelConfig{1, 0, 1, 0.0}, rng), ConfigError);
  EXPECT_THROW(draw_channel(ChannelConfig{1, 1, 0, 0.0}, rng), ConfigError);
  EXPECT_THROW(draw_channel(ChannelConfig{1, 1, 1, std::nan("")}, rng), ConfigError);
}

TEST(Channel, RealizationShape) {
  Rng rng(2);
  const ChannelRealization r = draw_channel(ChannelConfig{4, 3, 5, 7.0}, rng);
  ASSERT_EQ(r.blocks.size(), 5u);
  for (const auto& h : r.blocks) {
    EXPECT_EQ(h.rows(), 3u);
    EXPECT_EQ(h.cols(), 4u);
  }
  EXPECT_NEAR(r.sigma2, noise_variance(7.0), 1e-15);
}

TEST(Channel, RayleighMoments) {
  Rng rng(3);
  const int draws = 100000;
  double sum_norm = 0.0;
  Complex sum{};
  for (int k = 0; k < draws / 10; ++k) {
    const ChannelRealization r = draw_channel(ChannelConfig{2, 1, 5, 0.0}, rng);
    for (const auto& h : r.blocks) {
      for (const Complex& z : h.data()) {
        sum_norm += std::norm(z);
        sum += z;
      }
    }
  }
  EXPECT_NEAR(sum_norm / draws, 1.0, 0.02);
  const double se = std::sqrt(0.5 / draws);
  EXPECT_NEAR(sum.real() / draws, 0.0, 3.0 * se * 1.5);
  EXPECT_NEAR(sum.imag() / draws, 0.0, 3.0 * se * 1.5);
}

TEST(Channel, AwgnDebugFading) {
  Rng rng(4);
  const ChannelRealization r = draw_channel(ChannelConfig{2, 2, 3, 0.0, Fading::kAwgn}, rng);
  for (const auto& h : r.blocks)
    for (const Complex& z : h.data()) EXPECT_EQ(z, Complex(1.0, 0.0));
}

TEST(Channel, AssembleSingleUseIsTheBlock) {
  Rng rng(5);
  const ChannelRealization r = draw_channel(ChannelConfig{4, 2, 1, 0.0}, rng);
  EXPECT_EQ(assemble_D(r), r.blocks[0]);
}

TEST(Channel, AssembleSisoIsDiagonal) {
  Rng rng(6);
  const ChannelRealization r = draw_channel(ChannelConfig{1, 1, 4, 0.0}, rng);
  const ComplexMatrix d = assemble_D(r);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      EXPECT_EQ(d(a, b), a == b ? r.blocks[a](0, 0) : Complex{});
}

TEST(Channel, AssembleMatchesHandPlacement) {
  Rng rng(7);
  const std::size_t n_t = 2, n_r = 3, p = 3;
  const ChannelRealization r = draw_channel(ChannelConfig{n_t, n_r, p, 0.0}, rng);
  const ComplexMatrix d = assemble_D(r);
  ASSERT_EQ(d.rows(), p * n_r);
  ASSERT_EQ(d.cols(), p * n_t);
  for (std::size_t row = 0; row < d.rows(); ++row) {
    for (std::size_t col = 0; col < d.cols(); ++col) {
      const std::size_t bi = row / n_r, bj = col / n_t;
      const Complex expected = bi == bj ? r.blocks[bi](row % n_r, col % n_t) : Complex{};
      EXPECT_EQ(d(row, col), expected);
    }
  }
}

TEST(Channel, NoiselessLimit) {
  Rng rng(8);
  ChannelRealization r = draw_channel(ChannelConfig{1, 2, 3, 0.0}, rng);
  r.sigma2 = 1e-30;
  prppsm::test::Gen gen(8);
  const ComplexMatrix g = gen.matrix(6, 3);
  const ComplexVector x = gen.vector(3);
  EXPECT_LT(max_abs_diff(transmit(r, g, x, rng), matvec(g, x)), 1e-10);
  EXPECT_THROW(transmit(r, g, gen.vector(2), rng), DimensionError);
}

TEST(Channel, NoiseVarianceMoment) {
  Rng rng(9);
  ChannelRealization r;
  r.sigma2 = 0.3;
  const ComplexMatrix zero(100, 1);
  const ComplexVector x{Complex{1.0, 0.0}};
  const int rounds = 1000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < rounds; ++k) {
    for (const Complex& z : transmit(r, zero, x, rng)) {
      sum += std::norm(z);
      sum_sq += std::norm(z) * std::norm(z);
    }
  }
  const double n = rounds * 100.0;
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  EXPECT_NEAR(mean, 0.3, 3.0 * se);
}

TEST(Channel, ReceivedEnergyBudgetAndSnr) {
  // E||y||^2 = E||D A P A x||^2 + p n_r sigma2, and per-antenna signal power is 1.
  Rng rng(10);
  prppsm::test::Gen gen(10);
  const std::size_t n_t = 4, n_r = 2, p = 3;
  const Alphabet bpsk = make_alphabet("BPSK");
  const SmConfig cfg{n_t, p, bpsk};
  const PrecoderMatrix pm = generate_precoder(p, p * n_t, PhaseSeed{1});
  const double snr_db = 3.0;
  const int trials = 40000;
  double signal = 0.0, total = 0.0;
  for (int k = 0; k < trials; ++k) {
    const ChannelRealization r = draw_channel(ChannelConfig{n_t, n_r, p, snr_db}, rng);
    SmFrame f;
    for (std::size_t i = 0; i < p; ++i) {
      f.pattern.antennas.push_back(gen.index(n_t));
      f.symbols.push_back(gen.index(2));
    }
    const ComplexMatrix a = build_activation_matrix(cfg, f.pattern);
    const ComplexMatrix g = effective_matrix_prppsm(assemble_D(r), a, pm);
    const ComplexVector x = f.symbol_vector(bpsk);
    signal += squared_norm(matvec(g, x).span());
    total += squared_norm(transmit(r, g, x, rng).span());
  }
  const double per_antenna_signal = signal / trials / (p * n_r);
  EXPECT_NEAR(per_antenna_signal, 1.0, 0.03);
  const double expected_total = signal / trials + p * n_r * noise_variance(snr_db);
  EXPECT_NEAR(total / trials, expected_total, 0.03 * expected_total);
}
