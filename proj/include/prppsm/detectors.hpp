#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prppsm/numerics.hpp"
#include "prppsm/precoder.hpp"
#include "prppsm/sm_codec.hpp"

namespace prppsm {

/// Which bits the precoder spreads.
enum class PrecodingMode {
  /// Transmit A P A x_s with a p x p*n_t precoder (PRPP-SM).
  kFull,
  /// Transmit A P x_s with a square precoder: antenna bits are not precoded.
  kModulationOnly,
};

/// A transmit hypothesis {A, x_s}.
using Hypothesis = SmFrame;

struct DetectionResult {
  Hypothesis hypothesis;
  /// ||y - D A P A x_s||^2 of the returned hypothesis.
  double cost = 0.0;
  /// Accepted local-search moves (0 for exhaustive and one-shot detectors).
  std::size_t iterations = 0;
  /// Hypotheses whose cost was evaluated.
  std::size_t neighbors_evaluated = 0;
};

inline constexpr std::uint64_t kDefaultMlCap = std::uint64_t{1} << 20;

/// Reference cost ||y - D A P A x_s||^2 (or ||y - D A P x_s||^2 for
/// kModulationOnly) evaluated with dense products.
double ml_cost(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
               const SmConfig& cfg, const Hypothesis& h,
               PrecodingMode mode = PrecodingMode::kFull);

/// Single-use SM cost ||y - H x||^2.
double sm_cost(const ComplexVector& y, const ComplexMatrix& h, const ComplexVector& x);

/// Evaluates the ML cost of hypotheses against one received vector with
/// structure-aware arithmetic: the channel matrix is stored by column with
/// its non-zero row range, and local moves update the residual in place of
/// recomputing D A P A x_s. Matches ml_cost to rounding.
class CostModel {
 public:
  CostModel(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
            const SmConfig& cfg, PrecodingMode mode = PrecodingMode::kFull);

  const SmConfig& config() const noexcept { return cfg_; }
  std::size_t rows() const noexcept { return y_.size(); }

  double cost(const Hypothesis& h) const;

  /// D A P A for pattern A (or D A P), rows() x p.
  ComplexMatrix effective(const ActivationPattern& pattern) const;

  struct State {
    Hypothesis hypothesis;
    std::vector<Complex> precoded;  // P A x_s (or P x_s), length p
    std::vector<Complex> residual;  // y - D A (precoded)
    double cost = 0.0;
  };

  State make_state(Hypothesis h) const;

  /// Cost after replacing channel use `use` with (antenna, symbol).
  /// `scratch` is resized as needed.
  double move_cost(const State& state, std::size_t use, std::size_t antenna, std::size_t symbol,
                   std::vector<Complex>& scratch) const;

 private:
  struct Column {
    std::size_t first_row = 0;
    std::vector<Complex> entries;
  };

  std::span<const Complex> precoder_column(std::size_t use, std::size_t antenna) const;
  void accumulate(std::vector<Complex>& out, std::size_t channel_col, Complex scale) const;

  SmConfig cfg_;
  PrecodingMode mode_;
  std::vector<Complex> y_;
  std::vector<Column> channel_cols_;
  std::vector<std::vector<Complex>> precoder_cols_;
};

/// (|A| n_t)^p, saturated at `cap + 1`.
std::uint64_t ml_hypothesis_count(const SmConfig& cfg, std::uint64_t cap = kDefaultMlCap);

/// Exhaustive minimizer over all patterns and symbol vectors. Enumeration
/// is lexicographic in the pattern (use 1 most significant), then in the
/// symbol indices; the first minimum wins. Throws MlInfeasibleError when
/// the hypothesis count exceeds `cap`.
DetectionResult detect_ml(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
                          const SmConfig& cfg, PrecodingMode mode = PrecodingMode::kFull,
                          std::uint64_t cap = kDefaultMlCap);

/// All hypotheses that differ from h at exactly one channel use, in the
/// antenna, the symbol, or both. Ordered by use; within a use: antenna
/// changes, then symbol changes, then joint changes (antenna-major).
std::vector<Hypothesis> neighborhood(const Hypothesis& h, const SmConfig& cfg);

/// Two-stage MMSE start point: per-use strongest entry of
/// (D^H D + s2 I)^{-1} D^H y picks the pattern, then the quantized MMSE
/// estimate through F = D A P A gives the symbols.
Hypothesis mmse_initial(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
                        const SmConfig& cfg, double sigma2,
                        PrecodingMode mode = PrecodingMode::kFull);

/// Best-improvement local search over `neighborhood`. A move is taken only
/// if it strictly lowers the cost; stops at the first local minimum.
DetectionResult detect_lsd(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
                           const SmConfig& cfg, double sigma2,
                           const std::optional<Hypothesis>& init = std::nullopt,
                           PrecodingMode mode = PrecodingMode::kFull);

/// Quantized (G^H G + s2 I)^{-1} G^H y.
std::vector<std::size_t> mmse_symbols(const ComplexVector& y, const ComplexMatrix& g,
                                      const Alphabet& alphabet, double sigma2);

/// Symbol-flip local search on ||y - G s||^2: best single-symbol
/// substitution per step, strict improvement only. The returned hypothesis
/// has an all-zero pattern.
DetectionResult detect_symbol_flip(const ComplexVector& y, const ComplexMatrix& g,
                                   const Alphabet& alphabet,
                                   std::span<const std::size_t> init_symbols);

}  // namespace prppsm
