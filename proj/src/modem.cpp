#include "prppsm/modem.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "prppsm/error.hpp"

namespace prppsm {
namespace {

std::size_t inverse_gray(std::size_t g) {
  std::size_t k = 0;
  for (; g != 0; g >>= 1) k ^= g;
  return k;
}

// Amplitude of a Gray-labeled `levels`-PAM point: label 0 sits at +(L-1),
// consecutive Gray labels step down by 2.
double pam_level(std::size_t label, std::size_t levels) {
  const auto k = static_cast<double>(inverse_gray(label));
  return static_cast<double>(levels - 1) - 2.0 * k;
}

std::vector<Complex> rectangular_qam(std::size_t order) {
  const auto bits = static_cast<std::size_t>(std::countr_zero(order));
  const std::size_t i_bits = (bits + 1) / 2;
  const std::size_t q_bits = bits / 2;
  const std::size_t i_levels = std::size_t{1} << i_bits;
  const std::size_t q_levels = std::size_t{1} << q_bits;
  std::vector<Complex> points(order);
  for (std::size_t label = 0; label < order; ++label) {
    const std::size_t i_label = label >> q_bits;
    const std::size_t q_label = label & (q_levels - 1);
    points[label] = {pam_level(i_label, i_levels), pam_level(q_label, q_levels)};
  }
  return points;
}

std::vector<Complex> gray_psk(std::size_t order) {
  std::vector<Complex> points(order);
  for (std::size_t label = 0; label < order; ++label) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(inverse_gray(label)) /
                         static_cast<double>(order);
    points[label] = std::polar(1.0, angle);
  }
  return points;
}

void normalize(std::vector<Complex>& points) {
  const double scale = 1.0 / std::sqrt(mean_energy(points));
  for (Complex& z : points) z *= scale;
}

std::size_t parse_order(std::string_view digits, std::string_view original) {
  std::size_t order = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || order < 2 ||
      !std::has_single_bit(order)) {
    throw ConfigError("unknown alphabet '" + std::string(original) + "'");
  }
  return order;
}

}  // namespace

double mean_energy(std::span<const Complex> symbols) noexcept {
  double acc = 0.0;
  for (const Complex& z : symbols) acc += std::norm(z);
  return symbols.empty() ? 0.0 : acc / static_cast<double>(symbols.size());
}

Alphabet::Alphabet(std::string name, AlphabetFamily family, std::vector<Complex> symbols)
    : name_(std::move(name)),
      family_(family),
      symbols_(std::move(symbols)),
      bits_per_symbol_(static_cast<std::size_t>(std::countr_zero(symbols_.size()))) {}

Alphabet Alphabet::make(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (key == "BPSK" || key == "PSK2" || key == "2PSK") {
    return Alphabet("BPSK", AlphabetFamily::kBpsk, {Complex{1.0, 0.0}, Complex{-1.0, 0.0}});
  }
  if (key == "QPSK") key = "QAM4";

  auto family_of = [&](std::string_view tag) -> std::string_view {
    if (key.starts_with(tag)) return std::string_view(key).substr(tag.size());
    if (key.ends_with(tag)) return std::string_view(key).substr(0, key.size() - tag.size());
    return {};
  };
  if (auto digits = family_of("QAM"); !digits.empty()) {
    const std::size_t order = parse_order(digits, name);
    if (order < 4) throw ConfigError("unknown alphabet '" + std::string(name) + "'");
    auto points = rectangular_qam(order);
    normalize(points);
    return Alphabet("QAM" + std::to_string(order), AlphabetFamily::kQam, std::move(points));
  }
  if (auto digits = family_of("PSK"); !digits.empty()) {
    const std::size_t order = parse_order(digits, name);
    if (order < 4) throw ConfigError("unknown alphabet '" + std::string(name) + "'");
    return Alphabet("PSK" + std::to_string(order), AlphabetFamily::kPsk, gray_psk(order));
  }
  throw ConfigError("unknown alphabet '" + std::string(name) + "'");
}

std::size_t Alphabet::index_of_bits(std::span<const std::uint8_t> bits) const {
  if (bits.size() != bits_per_symbol_) {
    throw DimensionError("alphabet " + name_ + " expects " + std::to_string(bits_per_symbol_) +
                         " bits, got " + std::to_string(bits.size()));
  }
  std::size_t index = 0;
  for (std::uint8_t b : bits) {
    if (b > 1) throw ConfigError("bit value out of range");
    index = (index << 1) | b;
  }
  return index;
}

BitWord Alphabet::bits_of_index(std::size_t index) const {
  BitWord bits(bits_per_symbol_);
  for (std::size_t k = 0; k < bits_per_symbol_; ++k) {
    bits[bits_per_symbol_ - 1 - k] = static_cast<std::uint8_t>((index >> k) & 1U);
  }
  return bits;
}

std::size_t Alphabet::nearest_index(Complex z) const noexcept {
  std::size_t best = 0;
  double best_distance = std::norm(z - symbols_[0]);
  for (std::size_t k = 1; k < symbols_.size(); ++k) {
    const double d = std::norm(z - symbols_[k]);
    if (d < best_distance) {
      best_distance = d;
      best = k;
    }
  }
  return best;
}

Alphabet make_alphabet(std::string_view name) { return Alphabet::make(name); }

Complex map_bits(const Alphabet& alphabet, std::span<const std::uint8_t> bits) {
  return alphabet.symbol(alphabet.index_of_bits(bits));
}

Demapped demap_symbol(const Alphabet& alphabet, Complex z) {
  const std::size_t index = alphabet.nearest_index(z);
  return {index, alphabet.bits_of_index(index)};
}

}  // namespace prppsm
