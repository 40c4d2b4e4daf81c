#include "prppsm/sm_codec.hpp"

#include <bit>
#include <string>

#include "prppsm/error.hpp"

namespace prppsm {

void SmConfig::validate() const {
  if (n_t == 0 || !std::has_single_bit(n_t)) {
    throw ConfigError("n_t must be a power of two, got " + std::to_string(n_t));
  }
  if (p == 0) throw ConfigError("p must be at least 1");
}

std::size_t SmConfig::antenna_bits() const noexcept {
  return static_cast<std::size_t>(std::countr_zero(n_t));
}

std::vector<std::size_t> ActivationPattern::support(std::size_t n_t) const {
  std::vector<std::size_t> rows(antennas.size());
  for (std::size_t i = 0; i < antennas.size(); ++i) rows[i] = i * n_t + antennas[i];
  return rows;
}

ComplexVector SmFrame::symbol_vector(const Alphabet& alphabet) const {
  ComplexVector v(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) v[i] = alphabet.symbol(symbols[i]);
  return v;
}

void SmFrame::validate(const SmConfig& cfg) const {
  if (pattern.size() != cfg.p || symbols.size() != cfg.p) {
    throw DimensionError("frame length does not match p=" + std::to_string(cfg.p));
  }
  for (std::size_t i = 0; i < cfg.p; ++i) {
    if (pattern[i] >= cfg.n_t) throw ConfigError("antenna index out of range");
    if (symbols[i] >= cfg.alphabet.size()) throw ConfigError("symbol index out of range");
  }
}

ComplexMatrix build_activation_matrix(const SmConfig& cfg, const ActivationPattern& pattern) {
  if (pattern.size() != cfg.p) throw DimensionError("pattern length does not match p");
  ComplexMatrix a(cfg.p * cfg.n_t, cfg.p);
  for (std::size_t i = 0; i < cfg.p; ++i) {
    if (pattern[i] >= cfg.n_t) throw ConfigError("antenna index out of range");
    a(i * cfg.n_t + pattern[i], i) = 1.0;
  }
  return a;
}

ComplexVector apply_pattern(const SmConfig& cfg, const ActivationPattern& pattern,
                            const ComplexVector& v) {
  if (pattern.size() != cfg.p || v.size() != cfg.p) {
    throw DimensionError("apply_pattern: lengths do not match p");
  }
  ComplexVector out(cfg.p * cfg.n_t);
  for (std::size_t i = 0; i < cfg.p; ++i) {
    if (pattern[i] >= cfg.n_t) throw ConfigError("antenna index out of range");
    out[i * cfg.n_t + pattern[i]] = v[i];
  }
  return out;
}

SmFrame bits_to_frame(const SmConfig& cfg, std::span<const std::uint8_t> bits) {
  if (bits.size() != cfg.bits_per_frame()) {
    throw DimensionError("bits_to_frame: expected " + std::to_string(cfg.bits_per_frame()) +
                         " bits, got " + std::to_string(bits.size()));
  }
  const std::size_t antenna_bits = cfg.antenna_bits();
  const std::size_t symbol_bits = cfg.alphabet.bits_per_symbol();
  SmFrame frame;
  frame.pattern.antennas.resize(cfg.p);
  frame.symbols.resize(cfg.p);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < cfg.p; ++i) {
    std::size_t antenna = 0;
    for (std::size_t k = 0; k < antenna_bits; ++k, ++pos) {
      if (bits[pos] > 1) throw ConfigError("bit value out of range");
      antenna = (antenna << 1) | bits[pos];
    }
    frame.pattern.antennas[i] = antenna;
    frame.symbols[i] = cfg.alphabet.index_of_bits(bits.subspan(pos, symbol_bits));
    pos += symbol_bits;
  }
  return frame;
}

BitWord frame_to_bits(const SmConfig& cfg, const SmFrame& frame) {
  frame.validate(cfg);
  const std::size_t antenna_bits = cfg.antenna_bits();
  BitWord bits;
  bits.reserve(cfg.bits_per_frame());
  for (std::size_t i = 0; i < cfg.p; ++i) {
    for (std::size_t k = antenna_bits; k-- > 0;) {
      bits.push_back(static_cast<std::uint8_t>((frame.pattern[i] >> k) & 1U));
    }
    const BitWord symbol_bits = cfg.alphabet.bits_of_index(frame.symbols[i]);
    bits.insert(bits.end(), symbol_bits.begin(), symbol_bits.end());
  }
  return bits;
}

std::vector<ComplexVector> enumerate_sm_set(const SmConfig& cfg) {
  if (cfg.p != 1) throw ConfigError("enumerate_sm_set requires p == 1");
  std::vector<ComplexVector> set;
  set.reserve(cfg.n_t * cfg.alphabet.size());
  for (std::size_t j = 0; j < cfg.n_t; ++j) {
    for (const Complex& s : cfg.alphabet.symbols()) {
      ComplexVector x(cfg.n_t);
      x[j] = s;
      set.push_back(std::move(x));
    }
  }
  return set;
}

}  // namespace prppsm
