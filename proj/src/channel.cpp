#include "prppsm/channel.hpp"

#include <cmath>

#include "prppsm/error.hpp"

namespace prppsm {

void ChannelConfig::validate() const {
  if (n_t == 0 || n_r == 0 || p == 0) throw ConfigError("channel dimensions must be positive");
  if (!std::isfinite(snr_db)) throw ConfigError("snr_db must be finite");
}

double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

ChannelRealization draw_channel(const ChannelConfig& cfg, Rng& rng) {
  cfg.validate();
  ChannelRealization out;
  out.sigma2 = noise_variance(cfg.snr_db);
  out.blocks.reserve(cfg.p);
  for (std::size_t i = 0; i < cfg.p; ++i) {
    ComplexMatrix h(cfg.n_r, cfg.n_t);
    for (std::size_t r = 0; r < cfg.n_r; ++r) {
      for (std::size_t c = 0; c < cfg.n_t; ++c) {
        h(r, c) = cfg.fading == Fading::kAwgn ? Complex{1.0, 0.0} : rng.complex_normal(1.0);
      }
    }
    out.blocks.push_back(std::move(h));
  }
  return out;
}

ComplexMatrix assemble_D(const ChannelRealization& realization) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& h : realization.blocks) {
    rows += h.rows();
    cols += h.cols();
  }
  ComplexMatrix d(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& h : realization.blocks) {
    for (std::size_t r = 0; r < h.rows(); ++r) {
      for (std::size_t c = 0; c < h.cols(); ++c) d(r0 + r, c0 + c) = h(r, c);
    }
    r0 += h.rows();
    c0 += h.cols();
  }
  return d;
}

ComplexVector transmit(const ChannelRealization& realization, const ComplexMatrix& effective,
                       const ComplexVector& x, Rng& rng) {
  ComplexVector y = matvec(effective, x);
  for (Complex& v : y) v += rng.complex_normal(realization.sigma2);
  return y;
}

}  // namespace prppsm
