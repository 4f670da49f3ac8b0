#include "tsens/linalg.hpp"

#include <cmath>
#include <cstdint>

namespace tsens {
namespace kernels {

void matmul(const Matrix& a, const Matrix& b, Matrix& c, Exec exec) {
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  c = Matrix(m, n);
  const std::int64_t im = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < im; ++i) {
    const double* ai = a.data() + i * k;
    double* ci = c.data() + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = ai[p];
      const double* bp = b.data() + p * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

void matmul_nt(const Matrix& a, const Matrix& b, Matrix& c, Exec exec) {
  const std::size_t m = a.rows(), k = a.cols(), n = b.rows();
  c = Matrix(m, n);
  const std::int64_t im = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < im; ++i) {
    const double* ai = a.data() + i * k;
    double* ci = c.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double* bj = b.data() + j * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += ai[p] * bj[p];
      ci[j] = s;
    }
  }
}

void scaled_gram(const Matrix& f, double scale, Matrix& k, Exec exec) {
  const std::size_t n = f.rows(), nn = f.cols();
  k = Matrix(n, n);
  const std::int64_t in = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::int64_t l = 0; l < in; ++l) {
    const double* fl = f.data() + l * nn;
    for (std::size_t m = static_cast<std::size_t>(l); m < n; ++m) {
      const double* fm = f.data() + m * nn;
      double s = 0.0;
      for (std::size_t j = 0; j < nn; ++j) s += fl[j] * fm[j];
      k(l, m) = scale * s;
    }
  }
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t l = 0; l < in; ++l)
    for (std::size_t m = 0; m < static_cast<std::size_t>(l); ++m) k(l, m) = k(m, l);
}

void weighted_gram(const Matrix& f, std::span<const double> w, Matrix& k, Exec exec) {
  const std::size_t n = f.rows(), nn = f.cols();
  k = Matrix(n, n);
  const std::int64_t in = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::parallel)
  for (std::int64_t l = 0; l < in; ++l) {
    const double* fl = f.data() + l * nn;
    for (std::size_t m = static_cast<std::size_t>(l); m < n; ++m) {
      const double* fm = f.data() + m * nn;
      double s = 0.0;
      for (std::size_t j = 0; j < nn; ++j) s += w[j] * fl[j] * fm[j];
      k(l, m) = s;
    }
  }
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t l = 0; l < in; ++l)
    for (std::size_t m = 0; m < static_cast<std::size_t>(l); ++m) k(l, m) = k(m, l);
}

void matvec(const Matrix& a, std::span<const double> x, std::span<double> y, Exec exec) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::int64_t im = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < im; ++i) {
    const double* ai = a.data() + i * n;
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
}

}  // namespace kernels

bool cholesky_factor(Matrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (d <= 0.0 || !std::isfinite(d)) return false;
    a(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / a(j, j);
    }
  }
  return true;
}

void cholesky_solve(const Matrix& chol, std::span<double> x) {
  const std::size_t n = chol.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol(i, k) * x[k];
    x[i] = s / chol(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= chol(k, ii) * x[k];
    x[ii] = s / chol(ii, ii);
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace tsens
