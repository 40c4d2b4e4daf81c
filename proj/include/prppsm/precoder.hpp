#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prppsm/numerics.hpp"

namespace prppsm {

struct PhaseSeed {
  std::uint64_t value = 0;
  friend bool operator==(PhaseSeed, PhaseSeed) = default;
};

enum class PrecoderKind { kSquare, kRectangular };

/// Pseudo-random phase precoder: p rows, p (square) or p*n_t
/// (rectangular) columns, every entry (1/sqrt(p)) e^{j theta}.
class PrecoderMatrix {
 public:
  PrecoderMatrix(ComplexMatrix matrix, PhaseSeed seed, PrecoderKind kind)
      : matrix_(std::move(matrix)), seed_(seed), kind_(kind) {}

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  PhaseSeed seed() const noexcept { return seed_; }
  PrecoderKind kind() const noexcept { return kind_; }
  std::size_t rows() const noexcept { return matrix_.rows(); }
  std::size_t cols() const noexcept { return matrix_.cols(); }

 private:
  ComplexMatrix matrix_;
  PhaseSeed seed_;
  PrecoderKind kind_;
};

/// Phases theta_{r,c} in row-major order: Rng(seed.value) (xoshiro256**
/// seeded through SplitMix64), one 53-bit uniform u per entry,
/// theta = 2*pi*u.
std::vector<double> precoder_phases(std::size_t p, std::size_t cols, PhaseSeed seed);

/// `cols` must be a positive multiple of p.
PrecoderMatrix generate_precoder(std::size_t p, std::size_t cols, PhaseSeed seed);

/// 1 x n_t all-ones precoder: the p = 1 precoder with every phase zero.
/// Turns the PRPP-SM model into plain single-use SM.
PrecoderMatrix unprecoded_sm(std::size_t n_t);

/// G = D P.
ComplexMatrix effective_matrix_prpp(const ComplexMatrix& d, const PrecoderMatrix& p);

/// D A P A, a (p*n_r) x p matrix.
ComplexMatrix effective_matrix_prppsm(const ComplexMatrix& d, const ComplexMatrix& a,
                                      const PrecoderMatrix& p);

/// D A P with a square P: only the modulation symbols are precoded.
ComplexMatrix effective_matrix_ablation(const ComplexMatrix& d, const ComplexMatrix& a,
                                        const PrecoderMatrix& p);

}  // namespace prppsm
