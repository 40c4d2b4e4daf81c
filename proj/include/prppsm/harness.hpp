#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prppsm/channel.hpp"
#include "prppsm/detectors.hpp"
#include "prppsm/modem.hpp"
#include "prppsm/precoder.hpp"
#include "prppsm/sm_codec.hpp"

namespace prppsm {

enum class Scheme {
  /// Plain SM: p independent single-use transmissions, no precoding.
  kSm,
  /// Phase-precoded single-antenna system (n_t must be 1).
  kPrpp,
  /// Both antenna and modulation bits precoded with a p x p*n_t matrix.
  kPrppSm,
  /// Only the modulation symbols precoded (square p x p matrix).
  kPrppSmAblation,
};

enum class DetectorKind { kMl, kLsd, kSymbolFlipLas, kMmseOnly };

enum class LsdInit { kMmse, kRandom, kTruth };

struct StoppingRule {
  std::uint64_t min_bit_errors = 200;
  std::uint64_t max_frames = 100000;
};

struct Scenario {
  std::string name = "scenario";
  Scheme scheme = Scheme::kPrppSm;
  std::size_t n_t = 4;
  std::size_t n_r = 1;
  std::size_t p = 1;
  std::string alphabet = "BPSK";
  DetectorKind detector = DetectorKind::kMl;
  LsdInit lsd_init = LsdInit::kMmse;
  std::vector<double> snr_db_list;
  StoppingRule stopping;
  std::uint64_t master_seed = 1;
  std::uint64_t precoder_seed = 0;
  bool precoder_per_frame = false;
  Fading fading = Fading::kRayleigh;
  std::uint64_t ml_cap = kDefaultMlCap;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;

  SmConfig sm_config() const;
  std::size_t bits_per_channel_use() const;
  std::size_t bits_per_frame() const { return p * bits_per_channel_use(); }
};

struct FrameOutcome {
  BitWord tx_bits;
  BitWord rx_bits;
  /// For Scheme::kSm the hypothesis is the concatenation of the p single-use
  /// decisions, and the counters are summed over them.
  DetectionResult detection;
  std::size_t antenna_bit_errors = 0;
  std::size_t symbol_bit_errors = 0;

  std::size_t bit_errors() const noexcept { return antenna_bit_errors + symbol_bit_errors; }
};

/// Simulates frames of one scenario. Holds the static precoder, so build
/// it once per sweep. Thread-safe for concurrent `run` calls.
class FrameSimulator {
 public:
  explicit FrameSimulator(Scenario scenario);

  const Scenario& scenario() const noexcept { return scenario_; }

  /// One frame at snr_db_list[snr_index]. Every random draw comes from
  /// streams keyed by (master_seed, snr_index, trial_index).
  FrameOutcome run(std::size_t snr_index, std::uint64_t trial_index) const;

 private:
  PrecoderMatrix precoder_for(std::size_t snr_index, std::uint64_t trial_index) const;
  DetectionResult detect(const ComplexVector& y, const ComplexMatrix& d,
                         const PrecoderMatrix& precoder, const SmConfig& cfg, double sigma2,
                         const Hypothesis& truth, Rng& init_rng) const;

  Scenario scenario_;
  SmConfig sm_;
  std::optional<PrecoderMatrix> static_precoder_;
};

FrameOutcome run_frame(const Scenario& scenario, std::size_t snr_index, std::uint64_t trial_index);

struct BerPoint {
  double snr_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t bits = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  double avg_iterations = 0.0;
  double avg_neighbor_evals = 0.0;
  std::uint64_t antenna_bit_errors = 0;
  std::uint64_t symbol_bit_errors = 0;
};

struct BerCurve {
  std::string scenario_name;
  /// FNV-1a 64 of the canonical scenario text, hex.
  std::string scenario_digest;
  std::string scenario_text;
  std::uint64_t master_seed = 0;
  std::vector<BerPoint> points;
  double wall_seconds = 0.0;
};

struct SweepOptions {
  unsigned workers = 1;
};

/// Runs every SNR point until min_bit_errors or max_frames. Frames are
/// computed in parallel chunks and reduced in trial order, so the curve is
/// identical for any worker count.
BerCurve run_sweep(const Scenario& scenario, const SweepOptions& options = {});

/// SNR (dB) at which the curve crosses target_ber, by linear interpolation
/// in (SNR dB, log10 BER) on the first bracketing segment.
double snr_at_ber(const BerCurve& curve, double target_ber);

/// snr_at_ber(a) - snr_at_ber(b): positive when b reaches the target first.
double measure_gap(const BerCurve& a, const BerCurve& b, double target_ber);

}  // namespace prppsm
