#include "tsens/pce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>

namespace tsens {

namespace {

void enumerate_degree(int np, int degree, MultiIndex& cur, int pos, int left,
                      std::vector<MultiIndex>& out) {
  if (pos == np - 1) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur[pos] = v;
    enumerate_degree(np, degree, cur, pos + 1, left - v, out);
  }
}

}  // namespace

PcBasis total_degree_basis(int np, int n_ord, std::size_t cap) {
  if (np < 1 || n_ord < 0) throw ConfigError("total_degree_basis: need np >= 1, n_ord >= 0");
  double logsize = 0.0;
  for (int i = 1; i <= n_ord; ++i)
    logsize += std::log(static_cast<double>(np + i)) - std::log(static_cast<double>(i));
  if (logsize > std::log(static_cast<double>(cap)))
    throw ConfigError("total_degree_basis: basis size exceeds cap " + std::to_string(cap));

  PcBasis basis;
  basis.np = np;
  basis.n_ord = n_ord;
  MultiIndex cur(np, 0);
  for (int g = 0; g <= n_ord; ++g) enumerate_degree(np, g, cur, 0, g, basis.indices);
  basis.norms.resize(basis.indices.size());
  for (std::size_t k = 0; k < basis.indices.size(); ++k) {
    double nrm = 1.0;
    for (int a : basis.indices[k]) nrm /= (2.0 * a + 1.0);
    basis.norms[k] = nrm;
  }
  return basis;
}

double legendre_eval(int order, double x) {
  if (order == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= order; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double psi_eval(const PcBasis& basis, std::size_t k, std::span<const double> xi) {
  double v = 1.0;
  const MultiIndex& alpha = basis.indices[k];
  for (int i = 0; i < basis.np; ++i)
    if (alpha[i] > 0) v *= legendre_eval(alpha[i], xi[i]);
  return v;
}

Matrix design_matrix(const PcBasis& basis, const Matrix& xi, Exec exec) {
  const std::size_t n = xi.rows(), p = basis.size();
  Matrix lambda(n, p);
  const std::int64_t in = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
  for (std::int64_t j = 0; j < in; ++j) {
    // all 1D values up to n_ord once per sample, then products
    std::vector<double> leg(static_cast<std::size_t>(basis.np) * (basis.n_ord + 1));
    for (int i = 0; i < basis.np; ++i)
      for (int o = 0; o <= basis.n_ord; ++o)
        leg[i * (basis.n_ord + 1) + o] = legendre_eval(o, xi(j, i));
    for (std::size_t k = 0; k < p; ++k) {
      double v = 1.0;
      const MultiIndex& alpha = basis.indices[k];
      for (int i = 0; i < basis.np; ++i)
        if (alpha[i] > 0) v *= leg[i * (basis.n_ord + 1) + alpha[i]];
      lambda(j, k) = v;
    }
  }
  return lambda;
}

double PcExpansion::evaluate(std::span<const double> xi) const {
  double v = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0) v += coeffs[k] * psi_eval(basis, k, xi);
  return v;
}

double PcExpansion::variance() const {
  double v = 0.0;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    v += coeffs[k] * coeffs[k] * basis.norms[k];
  return v;
}

namespace {

Matrix projection_matrix(const ParamRule& rule, const PcBasis& basis, Exec exec) {
  if (rule.dim != basis.np)
    throw ConfigError("nisp_project: rule dimension != basis dimension");
  if (rule.exact_total_degree < 2 * basis.n_ord)
    std::cerr << "[tsens] warning: quadrature exactness " << rule.exact_total_degree
              << " below 2*N_ord = " << 2 * basis.n_ord
              << "; NISP projection may be inaccurate\n";
  Matrix xi(rule.nodes.size(), rule.dim);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    for (int d = 0; d < rule.dim; ++d) xi(j, d) = rule.nodes[j][d];
  const Matrix lambda = design_matrix(basis, xi, exec);
  Matrix pi(basis.size(), rule.nodes.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      pi(k, j) = rule.weights[j] * lambda(j, k) / basis.norms[k];
  return pi;
}

}  // namespace

PcExpansion nisp_project(std::span<const double> values, const ParamRule& rule,
                         const PcBasis& basis) {
  if (values.size() != rule.nodes.size())
    throw ConfigError("nisp_project: value count != node count");
  const Matrix pi = projection_matrix(rule, basis, Exec::serial);
  PcExpansion e;
  e.basis = basis;
  e.coeffs.assign(basis.size(), 0.0);
  kernels::matvec(pi, values, e.coeffs, Exec::serial);
  return e;
}

Matrix nisp_project_all(const Matrix& values, const ParamRule& rule, const PcBasis& basis,
                        Exec exec) {
  if (values.rows() != rule.nodes.size())
    throw ConfigError("nisp_project_all: row count != node count");
  const Matrix pi = projection_matrix(rule, basis, exec);
  Matrix coeffs;
  kernels::matmul(pi, values, coeffs, exec);
  return coeffs;
}

std::vector<std::size_t> index_set_Ki(const PcBasis& basis, int i) {
  if (i < 1 || i > basis.np) throw ConfigError("index_set_Ki: variable index out of range");
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k < basis.size(); ++k)
    if (basis.indices[k][i - 1] > 0) ks.push_back(k);
  return ks;
}

std::vector<std::size_t> index_set_Ij(const PcBasis& basis, int i) {
  if (i < 1 || i > basis.np) throw ConfigError("index_set_Ij: variable index out of range");
  std::vector<std::size_t> ks;
  for (std::size_t k = 1; k < basis.size(); ++k) {
    const MultiIndex& alpha = basis.indices[k];
    if (alpha[i - 1] == 0) continue;
    bool only = true;
    for (int l = 0; l < basis.np; ++l)
      if (l != i - 1 && alpha[l] > 0) only = false;
    if (only) ks.push_back(k);
  }
  return ks;
}

VarianceSplit pce_variance_split(const PcBasis& basis, std::span<const double> coeffs,
                                 std::span<const int> u) {
  std::vector<bool> in_u(basis.np + 1, false);
  for (int i : u) {
    if (i < 1 || i > basis.np) throw ConfigError("pce_variance_split: bad subset index");
    in_u[i] = true;
  }
  VarianceSplit split;
  for (std::size_t k = 1; k < basis.size(); ++k) {
    const double energy = coeffs[k] * coeffs[k] * basis.norms[k];
    if (energy == 0.0) continue;
    bool inside = true, touches = false;
    const MultiIndex& alpha = basis.indices[k];
    for (int i = 0; i < basis.np; ++i) {
      if (alpha[i] > 0) {
        if (in_u[i + 1])
          touches = true;
        else
          inside = false;
      }
    }
    split.variance += energy;
    if (touches) {
      split.total += energy;
      if (inside) split.first += energy;
    }
  }
  split.degenerate = (split.variance == 0.0);
  return split;
}

VarianceSplit pce_variance_split(const PcExpansion& e, std::span<const int> u) {
  return pce_variance_split(e.basis, e.coeffs, u);
}

}  // namespace tsens
