#include "prppsm/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prppsm/error.hpp"

namespace prppsm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Calls fn(use, antenna, symbol) for every neighbor of h in the documented
// enumeration order.
template <typename Fn>
void for_each_neighbor_move(const Hypothesis& h, const SmConfig& cfg, Fn&& fn) {
  const std::size_t n_symbols = cfg.alphabet.size();
  for (std::size_t i = 0; i < cfg.p; ++i) {
    const std::size_t a = h.pattern[i];
    const std::size_t s = h.symbols[i];
    for (std::size_t a2 = 0; a2 < cfg.n_t; ++a2) {
      if (a2 != a) fn(i, a2, s);
    }
    for (std::size_t s2 = 0; s2 < n_symbols; ++s2) {
      if (s2 != s) fn(i, a, s2);
    }
    for (std::size_t a2 = 0; a2 < cfg.n_t; ++a2) {
      if (a2 == a) continue;
      for (std::size_t s2 = 0; s2 < n_symbols; ++s2) {
        if (s2 != s) fn(i, a2, s2);
      }
    }
  }
}

bool is_block_diagonal(const ComplexMatrix& d, std::size_t p) {
  if (p == 0 || d.rows() % p != 0 || d.cols() % p != 0) return false;
  const std::size_t n_r = d.rows() / p;
  const std::size_t n_t = d.cols() / p;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (r / n_r != c / n_t && d(r, c) != Complex{}) return false;
    }
  }
  return true;
}

// (D^H D + s2 I)^{-1} D^H y, split into per-use solves when D is block
// diagonal.
ComplexVector first_stage_mmse(const ComplexVector& y, const ComplexMatrix& d, std::size_t p,
                               double sigma2) {
  if (!is_block_diagonal(d, p)) return solve_regularized(d, y, sigma2);
  const std::size_t n_r = d.rows() / p;
  const std::size_t n_t = d.cols() / p;
  ComplexVector v(d.cols());
  for (std::size_t i = 0; i < p; ++i) {
    ComplexMatrix h(n_r, n_t);
    ComplexVector yi(n_r);
    for (std::size_t r = 0; r < n_r; ++r) {
      yi[r] = y[i * n_r + r];
      for (std::size_t c = 0; c < n_t; ++c) h(r, c) = d(i * n_r + r, i * n_t + c);
    }
    const ComplexVector vi = solve_regularized(h, yi, sigma2);
    for (std::size_t c = 0; c < n_t; ++c) v[i * n_t + c] = vi[c];
  }
  return v;
}

}  // namespace

double ml_cost(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
               const SmConfig& cfg, const Hypothesis& h, PrecodingMode mode) {
  h.validate(cfg);
  const ComplexMatrix a = build_activation_matrix(cfg, h.pattern);
  const ComplexMatrix g = mode == PrecodingMode::kFull ? effective_matrix_prppsm(d, a, p)
                                                       : effective_matrix_ablation(d, a, p);
  if (g.rows() != y.size()) throw DimensionError("ml_cost: y does not match D");
  return squared_distance(y, matvec(g, h.symbol_vector(cfg.alphabet)));
}

double sm_cost(const ComplexVector& y, const ComplexMatrix& h, const ComplexVector& x) {
  return squared_distance(y, matvec(h, x));
}

CostModel::CostModel(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
                     const SmConfig& cfg, PrecodingMode mode)
    : cfg_(cfg), mode_(mode), y_(y.begin(), y.end()) {
  cfg_.validate();
  const std::size_t expected_p_cols = mode == PrecodingMode::kFull ? cfg.p * cfg.n_t : cfg.p;
  if (p.rows() != cfg.p || p.cols() != expected_p_cols) {
    throw DimensionError("precoder is " + std::to_string(p.rows()) + "x" +
                         std::to_string(p.cols()) + ", expected " + std::to_string(cfg.p) + "x" +
                         std::to_string(expected_p_cols));
  }
  if (d.cols() != cfg.p * cfg.n_t || d.rows() != y.size()) {
    throw DimensionError("channel matrix does not match y or p*n_t");
  }

  channel_cols_.resize(d.cols());
  for (std::size_t c = 0; c < d.cols(); ++c) {
    std::size_t first = d.rows();
    std::size_t last = 0;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      if (d(r, c) != Complex{}) {
        first = std::min(first, r);
        last = r;
      }
    }
    Column& col = channel_cols_[c];
    if (first == d.rows()) continue;
    col.first_row = first;
    col.entries.resize(last - first + 1);
    for (std::size_t r = first; r <= last; ++r) col.entries[r - first] = d(r, c);
  }

  precoder_cols_.assign(p.cols(), std::vector<Complex>(p.rows()));
  for (std::size_t r = 0; r < p.rows(); ++r) {
    for (std::size_t c = 0; c < p.cols(); ++c) precoder_cols_[c][r] = p.matrix()(r, c);
  }
}

std::span<const Complex> CostModel::precoder_column(std::size_t use, std::size_t antenna) const {
  return mode_ == PrecodingMode::kFull ? precoder_cols_[use * cfg_.n_t + antenna]
                                       : precoder_cols_[use];
}

void CostModel::accumulate(std::vector<Complex>& out, std::size_t channel_col,
                           Complex scale) const {
  const Column& col = channel_cols_[channel_col];
  Complex* dst = out.data() + col.first_row;
  for (std::size_t k = 0; k < col.entries.size(); ++k) dst[k] += col.entries[k] * scale;
}

CostModel::State CostModel::make_state(Hypothesis h) const {
  h.validate(cfg_);
  State state;
  state.precoded.assign(cfg_.p, Complex{});
  for (std::size_t i = 0; i < cfg_.p; ++i) {
    const auto column = precoder_column(i, h.pattern[i]);
    const Complex x = cfg_.alphabet.symbol(h.symbols[i]);
    for (std::size_t r = 0; r < cfg_.p; ++r) state.precoded[r] += column[r] * x;
  }
  state.residual = y_;
  for (std::size_t r = 0; r < cfg_.p; ++r) {
    accumulate(state.residual, r * cfg_.n_t + h.pattern[r], -state.precoded[r]);
  }
  state.cost = squared_norm(state.residual);
  state.hypothesis = std::move(h);
  return state;
}

double CostModel::cost(const Hypothesis& h) const { return make_state(h).cost; }

double CostModel::move_cost(const State& state, std::size_t use, std::size_t antenna,
                            std::size_t symbol, std::vector<Complex>& scratch) const {
  const Hypothesis& h = state.hypothesis;
  const std::size_t old_antenna = h.pattern[use];
  const Complex old_x = cfg_.alphabet.symbol(h.symbols[use]);
  const Complex new_x = cfg_.alphabet.symbol(symbol);
  const auto old_col = precoder_column(use, old_antenna);
  const auto new_col = precoder_column(use, antenna);

  scratch = state.residual;
  for (std::size_t r = 0; r < cfg_.p; ++r) {
    const Complex delta = new_col[r] * new_x - old_col[r] * old_x;
    if (r == use) {
      accumulate(scratch, r * cfg_.n_t + old_antenna, state.precoded[r]);
      accumulate(scratch, r * cfg_.n_t + antenna, -(state.precoded[r] + delta));
    } else {
      accumulate(scratch, r * cfg_.n_t + h.pattern[r], -delta);
    }
  }
  return squared_norm(scratch);
}

ComplexMatrix CostModel::effective(const ActivationPattern& pattern) const {
  if (pattern.size() != cfg_.p) throw DimensionError("pattern length does not match p");
  ComplexMatrix g(rows(), cfg_.p);
  std::vector<Complex> column(rows());
  for (std::size_t i = 0; i < cfg_.p; ++i) {
    if (pattern[i] >= cfg_.n_t) throw ConfigError("antenna index out of range");
    std::fill(column.begin(), column.end(), Complex{});
    const auto pcol = precoder_column(i, pattern[i]);
    for (std::size_t r = 0; r < cfg_.p; ++r) accumulate(column, r * cfg_.n_t + pattern[r], pcol[r]);
    for (std::size_t k = 0; k < rows(); ++k) g(k, i) = column[k];
  }
  return g;
}

std::uint64_t ml_hypothesis_count(const SmConfig& cfg, std::uint64_t cap) {
  const std::uint64_t per_use = cfg.n_t * cfg.alphabet.size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < cfg.p; ++i) {
    if (count > cap / per_use) return cap + 1;
    count *= per_use;
  }
  return count;
}

DetectionResult detect_ml(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
                          const SmConfig& cfg, PrecodingMode mode, std::uint64_t cap) {
  const std::uint64_t count = ml_hypothesis_count(cfg, cap);
  if (count > cap) {
    throw MlInfeasibleError("ML search over more than " + std::to_string(cap) +
                            " hypotheses; use the lsd detector");
  }
  const CostModel model(y, d, p, cfg, mode);
  const std::size_t rows = model.rows();
  const std::size_t n_sym = cfg.alphabet.size();
  const std::size_t n_use = cfg.p;

  // contributions[(i * n_sym + s) * rows + k] = G_A(k, i) * symbol(s)
  std::vector<Complex> contributions(n_use * n_sym * rows);
  // residuals[i] = y - sum_{u < i} G_A(:, u) * symbol(digit[u])
  std::vector<Complex> residuals((n_use + 1) * rows);
  std::copy(y.begin(), y.end(), residuals.begin());

  ActivationPattern pattern{std::vector<std::size_t>(n_use, 0)};
  std::vector<std::size_t> digits(n_use, 0);
  Hypothesis best;
  double best_cost = kInf;

  while (true) {
    const ComplexMatrix g = model.effective(pattern);
    for (std::size_t i = 0; i < n_use; ++i) {
      for (std::size_t s = 0; s < n_sym; ++s) {
        const Complex x = cfg.alphabet.symbol(s);
        Complex* dst = contributions.data() + (i * n_sym + s) * rows;
        for (std::size_t k = 0; k < rows; ++k) dst[k] = g(k, i) * x;
      }
    }

    std::fill(digits.begin(), digits.end(), 0);
    std::size_t level = 0;
    while (true) {
      for (std::size_t i = level; i < n_use; ++i) {
        const Complex* src = residuals.data() + i * rows;
        const Complex* c = contributions.data() + (i * n_sym + digits[i]) * rows;
        Complex* dst = residuals.data() + (i + 1) * rows;
        for (std::size_t k = 0; k < rows; ++k) dst[k] = src[k] - c[k];
      }
      const double cost = squared_norm({residuals.data() + n_use * rows, rows});
      if (cost < best_cost) {
        best_cost = cost;
        best.pattern = pattern;
        best.symbols = digits;
      }
      std::size_t i = n_use;
      while (i > 0 && digits[i - 1] == n_sym - 1) digits[--i] = 0;
      if (i == 0) break;
      ++digits[i - 1];
      level = i - 1;
    }

    std::size_t i = n_use;
    while (i > 0 && pattern.antennas[i - 1] == cfg.n_t - 1) pattern.antennas[--i] = 0;
    if (i == 0) break;
    ++pattern.antennas[i - 1];
  }

  DetectionResult result;
  result.cost = model.cost(best);
  result.hypothesis = std::move(best);
  result.neighbors_evaluated = static_cast<std::size_t>(count);
  return result;
}

std::vector<Hypothesis> neighborhood(const Hypothesis& h, const SmConfig& cfg) {
  cfg.validate();
  h.validate(cfg);
  std::vector<Hypothesis> out;
  out.reserve(cfg.p * (cfg.n_t * cfg.alphabet.size() - 1));
  for_each_neighbor_move(h, cfg, [&](std::size_t use, std::size_t antenna, std::size_t symbol) {
    Hypothesis n = h;
    n.pattern.antennas[use] = antenna;
    n.symbols[use] = symbol;
    out.push_back(std::move(n));
  });
  return out;
}

Hypothesis mmse_initial(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
                        const SmConfig& cfg, double sigma2, PrecodingMode mode) {
  if (!(sigma2 > 0.0)) throw ConfigError("mmse_initial requires sigma2 > 0");
  const CostModel model(y, d, p, cfg, mode);

  const ComplexVector v = first_stage_mmse(y, d, cfg.p, sigma2);
  Hypothesis h;
  h.pattern.antennas.resize(cfg.p);
  for (std::size_t i = 0; i < cfg.p; ++i) {
    std::size_t best = 0;
    double best_mag = std::norm(v[i * cfg.n_t]);
    for (std::size_t j = 1; j < cfg.n_t; ++j) {
      const double mag = std::norm(v[i * cfg.n_t + j]);
      if (mag > best_mag) {
        best_mag = mag;
        best = j;
      }
    }
    h.pattern.antennas[i] = best;
  }

  h.symbols = mmse_symbols(y, model.effective(h.pattern), cfg.alphabet, sigma2);
  return h;
}

DetectionResult detect_lsd(const ComplexVector& y, const ComplexMatrix& d, const PrecoderMatrix& p,
                           const SmConfig& cfg, double sigma2,
                           const std::optional<Hypothesis>& init, PrecodingMode mode) {
  const CostModel model(y, d, p, cfg, mode);
  CostModel::State state =
      model.make_state(init ? *init : mmse_initial(y, d, p, cfg, sigma2, mode));

  DetectionResult result;
  std::vector<Complex> scratch;
  while (true) {
    double best_cost = kInf;
    std::size_t best_use = 0;
    std::size_t best_antenna = 0;
    std::size_t best_symbol = 0;
    for_each_neighbor_move(state.hypothesis, cfg,
                           [&](std::size_t use, std::size_t antenna, std::size_t symbol) {
                             const double c = model.move_cost(state, use, antenna, symbol, scratch);
                             ++result.neighbors_evaluated;
                             if (c < best_cost) {
                               best_cost = c;
                               best_use = use;
                               best_antenna = antenna;
                               best_symbol = symbol;
                             }
                           });
    if (!(best_cost < state.cost)) break;
    Hypothesis candidate = state.hypothesis;
    candidate.pattern.antennas[best_use] = best_antenna;
    candidate.symbols[best_use] = best_symbol;
    CostModel::State next = model.make_state(std::move(candidate));
    // The incremental cost can differ from a fresh evaluation in the last
    // bits; the fresh value decides so the accepted costs strictly decrease.
    if (!(next.cost < state.cost)) break;
    state = std::move(next);
    ++result.iterations;
  }
  result.cost = state.cost;
  result.hypothesis = std::move(state.hypothesis);
  return result;
}

std::vector<std::size_t> mmse_symbols(const ComplexVector& y, const ComplexMatrix& g,
                                      const Alphabet& alphabet, double sigma2) {
  const ComplexVector z = solve_regularized(g, y, sigma2);
  std::vector<std::size_t> symbols(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) symbols[i] = alphabet.nearest_index(z[i]);
  return symbols;
}

DetectionResult detect_symbol_flip(const ComplexVector& y, const ComplexMatrix& g,
                                   const Alphabet& alphabet,
                                   std::span<const std::size_t> init_symbols) {
  const std::size_t n = g.cols();
  const std::size_t rows = g.rows();
  if (y.size() != rows || init_symbols.size() != n) {
    throw DimensionError("detect_symbol_flip: y, G and the initial vector do not conform");
  }
  for (std::size_t s : init_symbols) {
    if (s >= alphabet.size()) throw ConfigError("symbol index out of range");
  }

  std::vector<std::vector<Complex>> columns(n, std::vector<Complex>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c) columns[c][r] = g(r, c);
  }
  auto residual_of = [&](const std::vector<std::size_t>& symbols) {
    std::vector<Complex> res(y.begin(), y.end());
    for (std::size_t c = 0; c < n; ++c) {
      const Complex x = alphabet.symbol(symbols[c]);
      for (std::size_t r = 0; r < rows; ++r) res[r] -= columns[c][r] * x;
    }
    return res;
  };

  std::vector<std::size_t> symbols(init_symbols.begin(), init_symbols.end());
  std::vector<Complex> residual = residual_of(symbols);
  double cost = squared_norm(residual);

  DetectionResult result;
  while (true) {
    double best_cost = kInf;
    std::size_t best_index = 0;
    std::size_t best_symbol = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex current = alphabet.symbol(symbols[i]);
      for (std::size_t s = 0; s < alphabet.size(); ++s) {
        if (s == symbols[i]) continue;
        const Complex delta = alphabet.symbol(s) - current;
        double c = 0.0;
        for (std::size_t r = 0; r < rows; ++r) c += std::norm(residual[r] - columns[i][r] * delta);
        ++result.neighbors_evaluated;
        if (c < best_cost) {
          best_cost = c;
          best_index = i;
          best_symbol = s;
        }
      }
    }
    if (!(best_cost < cost)) break;
    std::vector<std::size_t> candidate = symbols;
    candidate[best_index] = best_symbol;
    std::vector<Complex> next = residual_of(candidate);
    const double next_cost = squared_norm(next);
    if (!(next_cost < cost)) break;
    symbols = std::move(candidate);
    residual = std::move(next);
    cost = next_cost;
    ++result.iterations;
  }

  result.hypothesis.pattern.antennas.assign(n, 0);
  result.hypothesis.symbols = std::move(symbols);
  result.cost = cost;
  return result;
}

}  // namespace prppsm
