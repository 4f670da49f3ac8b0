#pragma once

#include <functional>
#include <span>

#include "tsens/linalg.hpp"

namespace tsens {

struct OdeConfig {
  double abs_tol = 1e-6;
  double rel_tol = 1e-6;
  long max_steps = 10'000'000;
  double initial_step = 0.0;  // 0 -> automatic
};

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

// Adaptive Dormand-Prince 5(4) with PI step-size control and the standard
// quartic dense-output interpolant evaluated at every requested node.
// Returns one row per output node. Throws IntegrationError (carrying the
// last reached time) on step-size underflow or max_steps exhaustion.
Matrix integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                     std::span<const double> out_nodes, const OdeConfig& cfg);

}  // namespace tsens
