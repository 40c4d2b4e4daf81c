#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prppsm/numerics.hpp"

namespace prppsm {

/// Ordered bits, each 0 or 1, most significant first.
using BitWord = std::vector<std::uint8_t>;

enum class AlphabetFamily { kBpsk, kQam, kPsk };

/// A normalized modulation alphabet with Gray labeling.
///
/// Symbol index k carries the bit word whose natural-binary value is k
/// (MSB first), so the table order is the labeling. Mean symbol energy
/// is 1.
class Alphabet {
 public:
  /// Accepted names (case-insensitive, '-' ignored): BPSK, QAM<M> / <M>QAM
  /// for M = 4, 8, 16, 32, 64, ..., PSK<M> / <M>PSK for M >= 4.
  static Alphabet make(std::string_view name);

  const std::string& name() const noexcept { return name_; }
  AlphabetFamily family() const noexcept { return family_; }
  std::span<const Complex> symbols() const noexcept { return symbols_; }
  const Complex& symbol(std::size_t index) const { return symbols_.at(index); }
  std::size_t size() const noexcept { return symbols_.size(); }
  std::size_t bits_per_symbol() const noexcept { return bits_per_symbol_; }

  /// Symbol index whose label equals `bits`.
  std::size_t index_of_bits(std::span<const std::uint8_t> bits) const;
  BitWord bits_of_index(std::size_t index) const;

  /// Nearest symbol; ties go to the lowest index.
  std::size_t nearest_index(Complex z) const noexcept;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.name_ == b.name_; }

 private:
  Alphabet(std::string name, AlphabetFamily family, std::vector<Complex> symbols);

  std::string name_;
  AlphabetFamily family_;
  std::vector<Complex> symbols_;
  std::size_t bits_per_symbol_;
};

Alphabet make_alphabet(std::string_view name);

Complex map_bits(const Alphabet& alphabet, std::span<const std::uint8_t> bits);

struct Demapped {
  std::size_t index;
  BitWord bits;
};

/// Euclidean quantizer: argmin_s |z - s|^2, ties toward the lowest index.
Demapped demap_symbol(const Alphabet& alphabet, Complex z);

double mean_energy(std::span<const Complex> symbols) noexcept;

}  // namespace prppsm
