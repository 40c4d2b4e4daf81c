#include "prppsm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prppsm/error.hpp"

namespace prppsm {
namespace {

void require_finite(std::span<const Complex> values) {
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ConfigError("non-finite value in complex array");
    }
  }
}

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

ComplexVector::ComplexVector(std::size_t length) : entries_(length) {}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {
  require_finite(entries_);
}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
  require_finite(entries_);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("matrix data has " + std::to_string(data_.size()) +
                         " entries, expected " + std::to_string(rows_ * cols_));
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: " + shape(a) + " times " + shape(b));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: " + shape(a) + " times length " + std::to_string(x.size()));
  }
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    const auto row = a.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) acc += row[k] * x[k];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix hermitian(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

double frobenius_norm(const ComplexMatrix& a) { return std::sqrt(squared_norm(a.data())); }

double squared_norm(std::span<const Complex> v) noexcept {
  double acc = 0.0;
  for (const Complex& z : v) acc += std::norm(z);
  return acc;
}

double squared_distance(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DimensionError("squared_distance: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return acc;
}

ComplexVector solve_regularized(const ComplexMatrix& m, const ComplexVector& rhs, double sigma2) {
  if (m.rows() != rhs.size()) {
    throw DimensionError("solve_regularized: " + shape(m) + " with rhs length " +
                         std::to_string(rhs.size()));
  }
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw ConfigError("solve_regularized: sigma2 must be finite and >= 0");
  }
  const std::size_t n = m.cols();

  // Lower triangle of N = M^H M + sigma2 I, and b = M^H rhs.
  ComplexMatrix normal(n, n);
  ComplexVector b(n);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex ci = std::conj(row[i]);
      b[i] += ci * rhs[r];
      for (std::size_t j = 0; j <= i; ++j) normal(i, j) += ci * row[j];
    }
  }
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    normal(i, i) += sigma2;
    max_diag = std::max(max_diag, normal(i, i).real());
  }
  const double threshold = 1e-12 * max_diag;

  // In-place Cholesky: normal = L L^H.
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = normal(j, j).real();
    for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(normal(j, k));
    if (!(pivot > threshold)) {
      throw SingularMatrixError("solve_regularized: pivot " + std::to_string(pivot) +
                                " at column " + std::to_string(j));
    }
    const double ljj = std::sqrt(pivot);
    normal(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex acc = normal(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= normal(i, k) * std::conj(normal(j, k));
      normal(i, j) = acc / ljj;
    }
  }

  // Forward substitution L z = b, then back substitution L^H x = z.
  ComplexVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= normal(i, k) * x[k];
    x[i] = acc / normal(i, i).real();
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex acc = x[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= std::conj(normal(k, i)) * x[k];
    x[i] = acc / normal(i, i).real();
  }
  return x;
}

}  // namespace prppsm
