#pragma once

#include <span>
#include <vector>

#include "tsens/ensemble.hpp"
#include "tsens/linalg.hpp"
#include "tsens/quadrature.hpp"

namespace tsens {

using MultiIndex = std::vector<int>;

// Total-degree Legendre basis. Index 0 is the constant term; indices are
// graded (nondecreasing total degree), lexicographic within a degree.
struct PcBasis {
  int np = 0;
  int n_ord = 0;
  std::vector<MultiIndex> indices;
  std::vector<double> norms;  // ||Psi_k||^2 = prod 1/(2 alpha_i + 1)

  std::size_t size() const { return indices.size(); }
};

inline constexpr std::size_t kDefaultBasisCap = 2'000'000;

// Basis with (n_ord + np)! / (n_ord! np!) terms.
PcBasis total_degree_basis(int np, int n_ord, std::size_t cap = kDefaultBasisCap);

// Legendre P_n(x) by three-term recurrence (|x| <= 1 in our usage).
double legendre_eval(int order, double x);

// Psi_k(xi) = prod_i P_{alpha_i}(xi_i).
double psi_eval(const PcBasis& basis, std::size_t k, std::span<const double> xi);

// Design matrix Lambda_{jk} = Psi_k(xi^(j)).
Matrix design_matrix(const PcBasis& basis, const Matrix& xi, Exec exec = Exec::parallel);

struct PcExpansion {
  PcBasis basis;
  std::vector<double> coeffs;

  double evaluate(std::span<const double> xi) const;
  // total variance sum_{k>=1} c_k^2 ||Psi_k||^2
  double variance() const;
};

// NISP projection: c_l = sum_j nu_j u(xi^(j)) Psi_l(xi^(j)) / ||Psi_l||^2.
// Warns to stderr when the rule's guaranteed exactness is below 2*n_ord.
PcExpansion nisp_project(std::span<const double> values, const ParamRule& rule,
                         const PcBasis& basis);

// Same projection applied to many data vectors at once (columns of `values`,
// one per time node or mode): returns coefficient matrix (basis.size() x M).
Matrix nisp_project_all(const Matrix& values_nodes_by_cols, const ParamRule& rule,
                        const PcBasis& basis, Exec exec = Exec::parallel);

// Index sets over variables (1-based i): K_i = {k >= 1 : alpha_i^k > 0},
// I_i = {k >= 1 : alpha_i^k > 0, alpha_l^k = 0 for l != i}.
std::vector<std::size_t> index_set_Ki(const PcBasis& basis, int i);
std::vector<std::size_t> index_set_Ij(const PcBasis& basis, int i);

struct VarianceSplit {
  double first = 0.0;  // sum over k with support(alpha^k) inside U
  double total = 0.0;  // sum over k with support intersecting U
  double variance = 0.0;
  bool degenerate = false;  // variance == 0: indices undefined
};

// U holds 1-based variable indices.
VarianceSplit pce_variance_split(const PcExpansion& e, std::span<const int> u);
VarianceSplit pce_variance_split(const PcBasis& basis, std::span<const double> coeffs,
                                 std::span<const int> u);

}  // namespace tsens
