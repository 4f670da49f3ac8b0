#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "tsens/common.hpp"

namespace tsens {

// One-dimensional rule on [-1,1] against the normalized uniform measure
// dx/2; weights sum to 1.
struct Rule1D {
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // nonnegative, sum 1
};

// Multi-dimensional rule on [-1,1]^dim, unit total weight. Smolyak rules can
// carry negative weights; Gauss-based tensor rules never do.
struct ParamRule {
  int dim = 0;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  // Largest total polynomial degree the rule is guaranteed to integrate
  // exactly (per-dimension degree for tensor rules).
  int exact_total_degree = 0;
  std::string kind;  // "tensor" | "smolyak"
};

// Quadrature on the time axis [0,T]; weights sum to T.
struct TimeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double horizon = 0.0;
};

inline constexpr std::size_t kDefaultNodeCap = 10'000'000;

// Gauss-Legendre rule, nodes by Newton iteration on P_n to 1e-15 residual.
// Exact for polynomial degree <= 2n-1.
Rule1D gauss_legendre(int n);

// Clenshaw-Curtis rule with m nodes (m = 1 or odd m >= 3); nested doubling
// sequence used by the Smolyak construction. Exact through degree m.
Rule1D clenshaw_curtis(int m);

// Full tensorization of a 1D rule. Throws ConfigError when the node count
// would exceed `cap`.
ParamRule tensor_rule(const Rule1D& rule, int dim, std::size_t cap = kDefaultNodeCap);

// Smolyak sparse rule built on nested Clenshaw-Curtis levels
// (m_1 = 1, m_k = 2^{k-1}+1). Exact on total degree <= 2*level+1.
ParamRule smolyak_rule(int level, int dim, std::size_t cap = kDefaultNodeCap);

// Composite trapezoid weights on an increasing grid.
TimeRule trapezoid_rule(std::span<const double> t_grid);

// Uniform grid 0, dt, ..., T (T = n_intervals*dt) passed to trapezoid_rule.
TimeRule uniform_trapezoid(double t_end, double dt);

}  // namespace tsens
