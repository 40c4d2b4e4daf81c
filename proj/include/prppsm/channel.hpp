#pragma once

#include <cstddef>
#include <vector>

#include "prppsm/numerics.hpp"
#include "prppsm/random.hpp"

namespace prppsm {

enum class Fading {
  kRayleigh,
  /// Debug: every H entry is exactly 1, leaving only AWGN.
  kAwgn,
};

struct ChannelConfig {
  std::size_t n_t = 1;
  std::size_t n_r = 1;
  std::size_t p = 1;
  double snr_db = 0.0;
  Fading fading = Fading::kRayleigh;

  void validate() const;
};

/// Average SNR per receive antenna is 1/sigma^2 for unit-energy symbols.
double noise_variance(double snr_db);

struct ChannelRealization {
  /// H_(1..p), each n_r x n_t.
  std::vector<ComplexMatrix> blocks;
  /// Total complex noise variance; real and imaginary parts get half each.
  double sigma2 = 1.0;
};

/// i.i.d. CN(0,1) entries, independent across channel uses.
ChannelRealization draw_channel(const ChannelConfig& cfg, Rng& rng);

/// Block-diagonal (p*n_r) x (p*n_t) matrix diag(H_(1), ..., H_(p)).
ComplexMatrix assemble_D(const ChannelRealization& realization);

/// effective * x + n, n i.i.d. CN(0, sigma2).
ComplexVector transmit(const ChannelRealization& realization, const ComplexMatrix& effective,
                       const ComplexVector& x, Rng& rng);

}  // namespace prppsm
