#include "prppsm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "prppsm/error.hpp"
#include "prppsm/random.hpp"
#include "prppsm/scenario_io.hpp"

namespace prppsm {
namespace {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Hypothesis random_hypothesis(const SmConfig& cfg, Rng& rng) {
  Hypothesis h;
  h.pattern.antennas.resize(cfg.p);
  h.symbols.resize(cfg.p);
  for (std::size_t i = 0; i < cfg.p; ++i) {
    h.pattern.antennas[i] = static_cast<std::size_t>(rng.below(cfg.n_t));
    h.symbols[i] = static_cast<std::size_t>(rng.below(cfg.alphabet.size()));
  }
  return h;
}

struct FrameTally {
  std::uint64_t antenna_bit_errors = 0;
  std::uint64_t symbol_bit_errors = 0;
  std::uint64_t iterations = 0;
  std::uint64_t neighbor_evals = 0;
};

}  // namespace

void Scenario::validate() const {
  const SmConfig sm = sm_config();
  if (n_r == 0) throw ConfigError("n_r must be at least 1");
  if (scheme == Scheme::kPrpp && n_t != 1) {
    throw ConfigError("scheme prpp is the single-antenna system; set n_t = 1");
  }
  if (detector == DetectorKind::kSymbolFlipLas && n_t != 1) {
    throw ConfigError("symbol_flip_las only searches symbols; it requires n_t = 1");
  }
  if (snr_db_list.empty()) throw ConfigError("snr_db_list is empty");
  for (std::size_t k = 0; k < snr_db_list.size(); ++k) {
    if (!std::isfinite(snr_db_list[k])) throw ConfigError("snr_db_list has a non-finite value");
    if (k > 0 && !(snr_db_list[k] > snr_db_list[k - 1])) {
      throw ConfigError("snr_db_list must be strictly increasing");
    }
  }
  if (stopping.min_bit_errors < 1) throw ConfigError("min_bit_errors must be at least 1");
  if (stopping.max_frames < 1) throw ConfigError("max_frames must be at least 1");
  if (detector == DetectorKind::kMl) {
    SmConfig searched = sm;
    if (scheme == Scheme::kSm) searched.p = 1;
    if (ml_hypothesis_count(searched, ml_cap) > ml_cap) {
      throw ConfigError("ML search exceeds ml_cap hypotheses per frame; use detector = lsd");
    }
  }
}

SmConfig Scenario::sm_config() const {
  SmConfig cfg{n_t, p, Alphabet::make(alphabet)};
  cfg.validate();
  return cfg;
}

std::size_t Scenario::bits_per_channel_use() const { return sm_config().bits_per_channel_use(); }

FrameSimulator::FrameSimulator(Scenario scenario)
    : scenario_(std::move(scenario)), sm_(scenario_.sm_config()) {
  scenario_.validate();
  if (!scenario_.precoder_per_frame) static_precoder_ = precoder_for(0, 0);
}

PrecoderMatrix FrameSimulator::precoder_for(std::size_t snr_index,
                                            std::uint64_t trial_index) const {
  if (static_precoder_) return *static_precoder_;
  PhaseSeed seed{scenario_.precoder_seed};
  if (scenario_.precoder_per_frame) {
    seed.value = derive_stream(scenario_.precoder_seed, snr_index, trial_index,
                               StreamPurpose::kPrecoder)
                     .next();
  }
  const std::size_t p = scenario_.p;
  switch (scenario_.scheme) {
    case Scheme::kSm:
      return unprecoded_sm(scenario_.n_t);
    case Scheme::kPrppSm:
      return generate_precoder(p, p * scenario_.n_t, seed);
    case Scheme::kPrpp:
    case Scheme::kPrppSmAblation:
      return generate_precoder(p, p, seed);
  }
  throw ConfigError("unknown scheme");
}

DetectionResult FrameSimulator::detect(const ComplexVector& y, const ComplexMatrix& d,
                                       const PrecoderMatrix& precoder, const SmConfig& cfg,
                                       double sigma2, const Hypothesis& truth,
                                       Rng& init_rng) const {
  const PrecodingMode mode = scenario_.scheme == Scheme::kPrppSmAblation
                                 ? PrecodingMode::kModulationOnly
                                 : PrecodingMode::kFull;
  auto start = [&]() -> std::optional<Hypothesis> {
    switch (scenario_.lsd_init) {
      case LsdInit::kMmse:
        return std::nullopt;
      case LsdInit::kRandom:
        return random_hypothesis(cfg, init_rng);
      case LsdInit::kTruth:
        return truth;
    }
    return std::nullopt;
  };

  switch (scenario_.detector) {
    case DetectorKind::kMl:
      return detect_ml(y, d, precoder, cfg, mode, scenario_.ml_cap);
    case DetectorKind::kLsd:
      return detect_lsd(y, d, precoder, cfg, sigma2, start(), mode);
    case DetectorKind::kMmseOnly: {
      DetectionResult r;
      r.hypothesis = mmse_initial(y, d, precoder, cfg, sigma2, mode);
      r.cost = CostModel(y, d, precoder, cfg, mode).cost(r.hypothesis);
      r.neighbors_evaluated = 1;
      return r;
    }
    case DetectorKind::kSymbolFlipLas: {
      // n_t == 1, so the activation matrix is the identity and G = D P.
      const ComplexMatrix g = matmul(d, precoder.matrix());
      const auto init = start();
      const std::vector<std::size_t> init_symbols =
          init ? init->symbols : mmse_symbols(y, g, cfg.alphabet, sigma2);
      return detect_symbol_flip(y, g, cfg.alphabet, init_symbols);
    }
  }
  throw ConfigError("unknown detector");
}

FrameOutcome FrameSimulator::run(std::size_t snr_index, std::uint64_t trial_index) const {
  if (snr_index >= scenario_.snr_db_list.size()) throw ConfigError("snr_index out of range");
  const std::uint64_t seed = scenario_.master_seed;
  Rng bit_rng = derive_stream(seed, snr_index, trial_index, StreamPurpose::kBits);
  Rng channel_rng = derive_stream(seed, snr_index, trial_index, StreamPurpose::kChannel);
  Rng noise_rng = derive_stream(seed, snr_index, trial_index, StreamPurpose::kNoise);
  Rng init_rng = derive_stream(seed, snr_index, trial_index, StreamPurpose::kDetectorInit);

  FrameOutcome out;
  out.tx_bits.resize(sm_.bits_per_frame());
  for (auto& b : out.tx_bits) b = bit_rng.bit();
  const SmFrame frame = bits_to_frame(sm_, out.tx_bits);
  const ComplexVector x_s = frame.symbol_vector(sm_.alphabet);

  const ChannelConfig channel{scenario_.n_t, scenario_.n_r, scenario_.p,
                              scenario_.snr_db_list[snr_index], scenario_.fading};
  const ChannelRealization realization = draw_channel(channel, channel_rng);
  const ComplexMatrix d = assemble_D(realization);
  const ComplexMatrix a = build_activation_matrix(sm_, frame.pattern);
  const PrecoderMatrix precoder = precoder_for(snr_index, trial_index);

  if (scenario_.scheme == Scheme::kSm) {
    const ComplexVector y = transmit(realization, matmul(d, a), x_s, noise_rng);
    const SmConfig single{sm_.n_t, 1, sm_.alphabet};
    const std::size_t n_r = scenario_.n_r;
    out.detection.hypothesis.pattern.antennas.resize(sm_.p);
    out.detection.hypothesis.symbols.resize(sm_.p);
    for (std::size_t i = 0; i < sm_.p; ++i) {
      ComplexVector yi(n_r);
      for (std::size_t r = 0; r < n_r; ++r) yi[r] = y[i * n_r + r];
      const Hypothesis truth{ActivationPattern{{frame.pattern[i]}}, {frame.symbols[i]}};
      const DetectionResult r =
          detect(yi, realization.blocks[i], precoder, single, realization.sigma2, truth, init_rng);
      out.detection.hypothesis.pattern.antennas[i] = r.hypothesis.pattern[0];
      out.detection.hypothesis.symbols[i] = r.hypothesis.symbols[0];
      out.detection.cost += r.cost;
      out.detection.iterations += r.iterations;
      out.detection.neighbors_evaluated += r.neighbors_evaluated;
    }
  } else {
    const ComplexMatrix effective = scenario_.scheme == Scheme::kPrppSmAblation
                                        ? effective_matrix_ablation(d, a, precoder)
                                        : effective_matrix_prppsm(d, a, precoder);
    const ComplexVector y = transmit(realization, effective, x_s, noise_rng);
    out.detection = detect(y, d, precoder, sm_, realization.sigma2, frame, init_rng);
  }

  out.rx_bits = frame_to_bits(sm_, out.detection.hypothesis);
  const std::size_t per_use = sm_.bits_per_channel_use();
  const std::size_t antenna_bits = sm_.antenna_bits();
  for (std::size_t k = 0; k < out.tx_bits.size(); ++k) {
    if (out.tx_bits[k] == out.rx_bits[k]) continue;
    if (k % per_use < antenna_bits) {
      ++out.antenna_bit_errors;
    } else {
      ++out.symbol_bit_errors;
    }
  }
  return out;
}

FrameOutcome run_frame(const Scenario& scenario, std::size_t snr_index,
                       std::uint64_t trial_index) {
  return FrameSimulator(scenario).run(snr_index, trial_index);
}

BerCurve run_sweep(const Scenario& scenario, const SweepOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const FrameSimulator sim(scenario);
  const unsigned workers = std::max(1U, options.workers);
  const std::uint64_t chunk = workers == 1 ? 1 : 64ULL * workers;
  const std::uint64_t bits_per_frame = scenario.bits_per_frame();

  BerCurve curve;
  curve.scenario_name = scenario.name;
  curve.scenario_text = scenario_to_text(scenario);
  curve.scenario_digest = fnv1a_hex(curve.scenario_text);
  curve.master_seed = scenario.master_seed;

  std::vector<FrameTally> tallies;
  for (std::size_t k = 0; k < scenario.snr_db_list.size(); ++k) {
    BerPoint point;
    point.snr_db = scenario.snr_db_list[k];
    std::uint64_t iterations = 0;
    std::uint64_t evals = 0;
    std::uint64_t next_trial = 0;
    bool done = false;
    while (!done) {
      const std::uint64_t n = std::min(chunk, scenario.stopping.max_frames - next_trial);
      tallies.assign(n, FrameTally{});
      auto work = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t j = first; j < n; j += stride) {
          const FrameOutcome o = sim.run(k, next_trial + j);
          tallies[j] = {o.antenna_bit_errors, o.symbol_bit_errors, o.detection.iterations,
                        o.detection.neighbors_evaluated};
        }
      };
      if (workers == 1 || n == 1) {
        work(0, 1);
      } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
          threads.emplace_back([&, w] {
            try {
              work(w, workers);
            } catch (...) {
              errors[w] = std::current_exception();
            }
          });
        }
        for (auto& t : threads) t.join();
        for (auto& e : errors) {
          if (e) std::rethrow_exception(e);
        }
      }
      for (const FrameTally& t : tallies) {
        ++point.frames;
        point.antenna_bit_errors += t.antenna_bit_errors;
        point.symbol_bit_errors += t.symbol_bit_errors;
        iterations += t.iterations;
        evals += t.neighbor_evals;
        const std::uint64_t errors = point.antenna_bit_errors + point.symbol_bit_errors;
        if (errors >= scenario.stopping.min_bit_errors ||
            point.frames >= scenario.stopping.max_frames) {
          done = true;
          break;
        }
      }
      next_trial += n;
    }
    point.bits = point.frames * bits_per_frame;
    point.bit_errors = point.antenna_bit_errors + point.symbol_bit_errors;
    point.ber = static_cast<double>(point.bit_errors) / static_cast<double>(point.bits);
    point.avg_iterations = static_cast<double>(iterations) / static_cast<double>(point.frames);
    point.avg_neighbor_evals = static_cast<double>(evals) / static_cast<double>(point.frames);
    curve.points.push_back(point);
  }
  curve.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return curve;
}

double snr_at_ber(const BerCurve& curve, double target_ber) {
  if (!(target_ber > 0.0)) throw ConfigError("target BER must be positive");
  const auto& pts = curve.points;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double b0 = pts[k].ber;
    const double b1 = pts[k + 1].ber;
    if (b0 == target_ber) return pts[k].snr_db;
    if (!(b0 > target_ber && target_ber >= b1) || b1 <= 0.0) continue;
    if (b1 == target_ber) return pts[k + 1].snr_db;
    const double t = (std::log10(target_ber) - std::log10(b0)) / (std::log10(b1) - std::log10(b0));
    return pts[k].snr_db + t * (pts[k + 1].snr_db - pts[k].snr_db);
  }
  if (!pts.empty() && pts.back().ber == target_ber) return pts.back().snr_db;
  throw Error("curve '" + curve.scenario_name + "' does not bracket BER " +
              std::to_string(target_ber));
}

double measure_gap(const BerCurve& a, const BerCurve& b, double target_ber) {
  return snr_at_ber(a, target_ber) - snr_at_ber(b, target_ber);
}

}  // namespace prppsm
