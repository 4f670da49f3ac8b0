#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tsens/common.hpp"

namespace tsens {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  std::vector<double> col(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = a_[i * cols_ + j];
    return c;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

namespace kernels {

// C = A * B, A: m x k, B: k x n. One writer per element of C, serial inner
// accumulation, so serial and parallel results agree bit for bit.
void matmul(const Matrix& a, const Matrix& b, Matrix& c, Exec exec);

// C = A * B^T, A: m x k, B: n x k.
void matmul_nt(const Matrix& a, const Matrix& b, Matrix& c, Exec exec);

// K = scale * F F^T for F: n x N (rows indexed by time node). Symmetric;
// upper triangle computed, lower mirrored.
void scaled_gram(const Matrix& f, double scale, Matrix& k, Exec exec);

// K = F diag(w) F^T.
void weighted_gram(const Matrix& f, std::span<const double> w, Matrix& k, Exec exec);

// y = A x.
void matvec(const Matrix& a, std::span<const double> x, std::span<double> y, Exec exec);

}  // namespace kernels

// Cholesky factorization/solve for symmetric positive definite systems
// (used by the ridge/least-squares paths; not a general solver).
// Returns false if the matrix is not numerically SPD.
bool cholesky_factor(Matrix& a);
void cholesky_solve(const Matrix& chol, std::span<double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace tsens
