#pragma once

#include <span>

#include "tsens/pce.hpp"

namespace tsens {

inline constexpr double kAutoTau = -1.0;

struct CsConfig {
  double tau = kAutoTau;  // l1 radius; negative means "auto" (cross-validated)
  int cv_folds = 5;
  double solver_tol = 1e-10;
  int max_iter = 20000;
};

struct CsResult {
  PcExpansion expansion;
  double tau_used = 0.0;
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;  // ||Lambda c - d||_2 at the solution
  double pg_norm = 0.0;        // projected-gradient norm at termination
};

// min ||Lambda c - d||_2^2  s.t.  ||c||_1 <= tau, solved by spectral
// projected gradient (Barzilai-Borwein steps, nonmonotone line search) with
// exact Euclidean projection onto the l1 ball. Non-convergence is reported in
// the result, never silently ignored.
CsResult cs_fit(const Matrix& xi, std::span<const double> u, const PcBasis& basis,
                const CsConfig& cfg);

// K-fold cross validation of tau over a log grid anchored at the l1 norm of a
// ridge-regularized least-squares proxy. Ties resolved toward the largest tau.
double cross_validate_tau(const Matrix& xi, std::span<const double> u, const PcBasis& basis,
                          const CsConfig& cfg);

// Euclidean projection of v onto {x : ||x||_1 <= tau}.
void project_l1_ball(std::span<double> v, double tau);

// Ridge-regularized least squares (normal equations); used as the tau-grid
// anchor and as an oracle in tests.
std::vector<double> ridge_solve(const Matrix& lambda, std::span<const double> d,
                                double mu_rel = 1e-10);

}  // namespace tsens
