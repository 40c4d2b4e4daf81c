#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "prppsm/error.hpp"
#include "prppsm/modem.hpp"
#include "test_util.hpp"

using namespace prppsm;

namespace {

const char* const kAlphabets[] = {"BPSK", "QAM4", "QAM8", "QAM16", "QAM32", "QAM64", "PSK8"};

std::size_t hamming(const BitWord& a, const BitWord& b) {
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d += a[k] != b[k];
  return d;
}

}  // namespace

TEST(Modem, BpskPoints) {
  const Alphabet a = make_alphabet("BPSK");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.bits_per_symbol(), 1u);
  EXPECT_EQ(a.symbol(0), Complex(1.0, 0.0));
  EXPECT_EQ(a.symbol(1), Complex(-1.0, 0.0));
}

TEST(Modem, BpskBitConvention) {
  const Alphabet a = make_alphabet("BPSK");
  EXPECT_EQ(map_bits(a, BitWord{0}), Complex(1.0, 0.0));
  EXPECT_EQ(map_bits(a, BitWord{1}), Complex(-1.0, 0.0));
}

TEST(Modem, Qam4UnnormalizedPoints) {
  const Alphabet a = make_alphabet("QAM4");
  const Complex expected[] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_LT(std::abs(a.symbol(k) * std::sqrt(2.0) - expected[k]), 1e-15) << k;
  }
}

TEST(Modem, Qam8RectangularGrid) {
  const Alphabet a = make_alphabet("QAM8");
  ASSERT_EQ(a.size(), 8u);
  std::set<std::pair<long, long>> grid;
  for (const Complex& s : a.symbols()) {
    const Complex z = s * std::sqrt(6.0);
    const long re = std::lround(z.real());
    const long im = std::lround(z.imag());
    EXPECT_LT(std::abs(z - Complex(static_cast<double>(re), static_cast<double>(im))), 1e-12);
    grid.insert({re, im});
  }
  const std::set<std::pair<long, long>> expected{{-3, -1}, {-3, 1}, {-1, -1}, {-1, 1},
                                                 {1, -1},  {1, 1},  {3, -1},  {3, 1}};
  EXPECT_EQ(grid, expected);
}

TEST(Modem, Qam8MeanEnergyFromPoints) {
  const Alphabet a = make_alphabet("QAM8");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum += a.symbol(k).real() * a.symbol(k).real() + a.symbol(k).imag() * a.symbol(k).imag();
  }
  EXPECT_NEAR(sum / 8.0, 1.0, 1e-12);
}

TEST(Modem, NameParsing) {
  EXPECT_EQ(make_alphabet("bpsk").name(), "BPSK");
  EXPECT_EQ(make_alphabet("8-QAM").name(), "QAM8");
  EXPECT_EQ(make_alphabet("qpsk").name(), "QAM4");
  EXPECT_EQ(make_alphabet("16qam").name(), "QAM16");
  EXPECT_EQ(make_alphabet("psk_8").name(), "PSK8");
  EXPECT_THROW(make_alphabet("QAM6"), ConfigError);
  EXPECT_THROW(make_alphabet("QAM2"), ConfigError);
  EXPECT_THROW(make_alphabet("FSK4"), ConfigError);
  EXPECT_THROW(make_alphabet(""), ConfigError);
}

TEST(Modem, AlphabetInvariants) {
  for (const char* name : kAlphabets) {
    const Alphabet a = make_alphabet(name);
    EXPECT_EQ(std::size_t{1} << a.bits_per_symbol(), a.size()) << name;
    EXPECT_NEAR(mean_energy(a.symbols()), 1.0, 1e-12) << name;
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = x + 1; y < a.size(); ++y) {
        EXPECT_GT(std::abs(a.symbol(x) - a.symbol(y)), 1e-6) << name;
      }
    }
  }
}

TEST(Modem, RoundTripEveryWord) {
  for (const char* name : kAlphabets) {
    const Alphabet a = make_alphabet(name);
    for (std::size_t k = 0; k < a.size(); ++k) {
      const BitWord w = a.bits_of_index(k);
      ASSERT_EQ(w.size(), a.bits_per_symbol());
      const Demapped d = demap_symbol(a, map_bits(a, w));
      EXPECT_EQ(d.bits, w) << name << " word " << k;
      EXPECT_EQ(d.index, k);
    }
  }
}

TEST(Modem, WrongWordLength) {
  const Alphabet a = make_alphabet("QAM8");
  EXPECT_THROW(map_bits(a, BitWord{0, 1}), DimensionError);
  EXPECT_THROW(map_bits(a, BitWord{0, 1, 0, 1}), DimensionError);
}

TEST(Modem, GrayNearestNeighborsDifferInOneBit) {
  for (const char* name : {"QAM4", "QAM8", "QAM16", "PSK8"}) {
    const Alphabet a = make_alphabet(name);
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = x + 1; y < a.size(); ++y)
        dmin = std::min(dmin, std::abs(a.symbol(x) - a.symbol(y)));
    std::size_t pairs = 0;
    for (std::size_t x = 0; x < a.size(); ++x) {
      for (std::size_t y = x + 1; y < a.size(); ++y) {
        if (std::abs(a.symbol(x) - a.symbol(y)) < dmin * (1.0 + 1e-9)) {
          ++pairs;
          EXPECT_EQ(hamming(a.bits_of_index(x), a.bits_of_index(y)), 1u)
              << name << " " << x << "," << y;
        }
      }
    }
    EXPECT_GT(pairs, 0u);
  }
}

TEST(Modem, DemapNearestPoint) {
  const Alphabet a = make_alphabet("BPSK");
  EXPECT_EQ(demap_symbol(a, {0.3, 0.0}).index, 0u);
  EXPECT_EQ(demap_symbol(a, {-0.3, 5.0}).index, 1u);
}

TEST(Modem, DemapExactTieGoesToLowestIndex) {
  const Alphabet a = make_alphabet("BPSK");
  const Demapped d = demap_symbol(a, {0.0, 0.0});
  EXPECT_EQ(d.index, 0u);
  EXPECT_EQ(d.bits, BitWord{0});
}

TEST(Modem, DemapMatchesBruteForceScan) {
  prppsm::test::Gen gen(7);
  for (const char* name : kAlphabets) {
    const Alphabet a = make_alphabet(name);
    for (int trial = 0; trial < 500; ++trial) {
      const Complex z{gen.real(-1.5, 1.5), gen.real(-1.5, 1.5)};
      std::size_t best = 0;
      for (std::size_t k = 1; k < a.size(); ++k) {
        if (std::norm(z - a.symbol(k)) < std::norm(z - a.symbol(best))) best = k;
      }
      EXPECT_EQ(demap_symbol(a, z).index, best) << name;
    }
  }
}
