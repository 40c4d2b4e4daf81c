#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "prppsm/modem.hpp"
#include "prppsm/numerics.hpp"

namespace prppsm {

/// Spatial-modulation frame geometry: `n_t` transmit antennas (one RF
/// chain), `p` channel uses per frame, and the modulation alphabet.
struct SmConfig {
  std::size_t n_t = 1;
  std::size_t p = 1;
  Alphabet alphabet = Alphabet::make("BPSK");

  /// Throws ConfigError unless n_t is a power of two and p >= 1.
  void validate() const;

  std::size_t antenna_bits() const noexcept;
  std::size_t bits_per_channel_use() const noexcept {
    return antenna_bits() + alphabet.bits_per_symbol();
  }
  std::size_t bits_per_frame() const noexcept { return p * bits_per_channel_use(); }
};

/// Active antenna for each of the p channel uses. Antenna indices are
/// zero-based here (antenna 1 in the usual notation is index 0).
struct ActivationPattern {
  std::vector<std::size_t> antennas;

  std::size_t size() const noexcept { return antennas.size(); }
  std::size_t operator[](std::size_t use) const noexcept { return antennas[use]; }

  /// Zero-based indices of the non-zero rows of the activation matrix.
  std::vector<std::size_t> support(std::size_t n_t) const;

  friend bool operator==(const ActivationPattern&, const ActivationPattern&) = default;
  friend auto operator<=>(const ActivationPattern&, const ActivationPattern&) = default;
};

/// The pair {pattern, symbol vector}. Symbols are held as alphabet indices
/// so every entry is a member of the alphabet by construction.
struct SmFrame {
  ActivationPattern pattern;
  std::vector<std::size_t> symbols;

  ComplexVector symbol_vector(const Alphabet& alphabet) const;
  void validate(const SmConfig& cfg) const;

  friend bool operator==(const SmFrame&, const SmFrame&) = default;
  friend auto operator<=>(const SmFrame&, const SmFrame&) = default;
};

/// The p*n_t x p 0/1 matrix whose column i has its single 1 at row
/// i*n_t + antennas[i].
ComplexMatrix build_activation_matrix(const SmConfig& cfg, const ActivationPattern& pattern);

/// Same result as build_activation_matrix(cfg, pattern) * v, by placement.
ComplexVector apply_pattern(const SmConfig& cfg, const ActivationPattern& pattern,
                            const ComplexVector& v);

/// Per channel use: log2(n_t) antenna bits (natural binary, MSB first) then
/// the symbol's Gray label; channel uses concatenated in order.
SmFrame bits_to_frame(const SmConfig& cfg, std::span<const std::uint8_t> bits);
BitWord frame_to_bits(const SmConfig& cfg, const SmFrame& frame);

/// All n_t * |A| single-use SM vectors, antenna-major. Requires p == 1.
std::vector<ComplexVector> enumerate_sm_set(const SmConfig& cfg);

}  // namespace prppsm
