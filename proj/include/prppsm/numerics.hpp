#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace prppsm {

using Complex = std::complex<double>;

/// Fixed-length dense complex vector.
///
/// The length is set at construction and never changes; entries are
/// mutable. Every constructor that takes caller data rejects NaN/Inf.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t length);
  ComplexVector(std::initializer_list<Complex> entries);
  explicit ComplexVector(std::vector<Complex> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  Complex& operator[](std::size_t i) noexcept { return entries_[i]; }
  const Complex& operator[](std::size_t i) const noexcept { return entries_[i]; }

  std::span<Complex> span() noexcept { return entries_; }
  std::span<const Complex> span() const noexcept { return entries_; }
  const std::vector<Complex>& entries() const noexcept { return entries_; }

  auto begin() noexcept { return entries_.begin(); }
  auto end() noexcept { return entries_.end(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> entries_;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Complex> data() const noexcept { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);

/// Conjugate transpose.
ComplexMatrix hermitian(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);

double squared_norm(std::span<const Complex> v) noexcept;

/// ||a - b||^2.
double squared_distance(const ComplexVector& a, const ComplexVector& b);

/// Solves (M^H M + sigma2 I) x = M^H rhs by Cholesky factorization of the
/// Hermitian normal matrix.
///
/// A pivot at or below 1e-12 times the largest diagonal entry of the normal
/// matrix raises SingularMatrixError. With sigma2 > 0 the normal matrix is
/// positive definite, so this only fires for sigma2 == 0 with a rank-deficient
/// M (or a regularizer far below machine precision).
ComplexVector solve_regularized(const ComplexMatrix& m, const ComplexVector& rhs, double sigma2);

}  // namespace prppsm
