#pragma once

#include <cstdint>
#include <random>

#include "prppsm/numerics.hpp"

namespace prppsm::test {

// Test-side generator, independent of the library's Rng.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  double real(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  Complex complex() { return {real(), real()}; }

  ComplexMatrix matrix(std::size_t rows, std::size_t cols) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = complex();
    }
    return m;
  }
  ComplexVector vector(std::size_t n) {
    ComplexVector v(n);
    for (auto& z : v) z = complex();
    return v;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
  }
  return m;
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace prppsm::test
