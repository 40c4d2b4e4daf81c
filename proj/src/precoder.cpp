#include "prppsm/precoder.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "prppsm/error.hpp"
#include "prppsm/random.hpp"

namespace prppsm {

std::vector<double> precoder_phases(std::size_t p, std::size_t cols, PhaseSeed seed) {
  Rng rng(seed.value);
  std::vector<double> phases(p * cols);
  for (double& theta : phases) theta = 2.0 * std::numbers::pi * rng.uniform();
  return phases;
}

PrecoderMatrix generate_precoder(std::size_t p, std::size_t cols, PhaseSeed seed) {
  if (p == 0 || cols == 0 || cols % p != 0) {
    throw ConfigError("precoder must be p x (k p), got " + std::to_string(p) + "x" +
                      std::to_string(cols));
  }
  const std::vector<double> phases = precoder_phases(p, cols, seed);
  const double magnitude = 1.0 / std::sqrt(static_cast<double>(p));
  std::vector<Complex> entries(phases.size());
  for (std::size_t k = 0; k < phases.size(); ++k) entries[k] = std::polar(magnitude, phases[k]);
  return {ComplexMatrix(p, cols, std::move(entries)), seed,
          cols == p ? PrecoderKind::kSquare : PrecoderKind::kRectangular};
}

PrecoderMatrix unprecoded_sm(std::size_t n_t) {
  return {ComplexMatrix(1, n_t, std::vector<Complex>(n_t, Complex{1.0, 0.0})), PhaseSeed{},
          n_t == 1 ? PrecoderKind::kSquare : PrecoderKind::kRectangular};
}

ComplexMatrix effective_matrix_prpp(const ComplexMatrix& d, const PrecoderMatrix& p) {
  if (p.rows() != p.cols()) throw DimensionError("PRPP precoder must be square");
  return matmul(d, p.matrix());
}

ComplexMatrix effective_matrix_prppsm(const ComplexMatrix& d, const ComplexMatrix& a,
                                      const PrecoderMatrix& p) {
  if (a.rows() != p.cols() || a.cols() != p.rows()) {
    throw DimensionError("activation matrix does not conform with the precoder");
  }
  return matmul(matmul(d, a), matmul(p.matrix(), a));
}

ComplexMatrix effective_matrix_ablation(const ComplexMatrix& d, const ComplexMatrix& a,
                                        const PrecoderMatrix& p) {
  if (p.rows() != p.cols()) throw DimensionError("ablation precoder must be square");
  return matmul(matmul(d, a), p.matrix());
}

}  // namespace prppsm
