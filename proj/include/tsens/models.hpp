#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tsens/ode.hpp"
#include "tsens/quadrature.hpp"

namespace tsens {

// ---------------------------------------------------------------------------
// Damped oscillator with closed-form displacement.

struct OscillatorParams {
  double alpha;  // damping rate
  double beta;   // angular frequency, != 0
  double ell;    // initial displacement
};

double oscillator_eval(double t, const OscillatorParams& p);

inline constexpr int kOscillatorDim = 3;

// xi in [-1,1]^3 -> (alpha, beta, ell) ranges U(3/8,5/8), U(10/4,15/4),
// U(-5/4,-3/4).
OscillatorParams oscillator_param_map(std::span<const double> xi);

// ---------------------------------------------------------------------------
// SIR-type cholera model with two bacterial compartments.

struct CholeraParams {
  double beta_L, beta_H;    // drinking rates (1/week)
  double kappa_L, kappa_H;  // carrying capacities (#bacteria/ml)
  double b;                 // birth/death rate (1/week)
  double chi;               // decay rate B_H -> B_L (1/week)
  double zeta;              // shedding rate
  double delta;             // B_L death rate (1/week)
  double gamma;             // recovery rate (1/week)
};

inline constexpr int kCholeraDim = 8;
inline constexpr double kCholeraPopulation = 10'000.0;

// 10% perturbation map around the nominal values for the 8 free parameters
// (beta_L, beta_H, kappa_L, b, chi, zeta, delta, gamma); kappa_H tracks the
// mapped kappa_L / 700.
CholeraParams cholera_param_map(std::span<const double> xi);

// State layout: (S, I, R, B_H, B_L).
void cholera_rhs(const CholeraParams& p, std::span<const double> y, std::span<double> dydt);

// Integrates from (9999, 1, 0, 0, 0) and returns I at every grid node.
std::vector<double> cholera_infected(std::span<const double> xi, const TimeRule& grid,
                                     const OdeConfig& cfg);

// Full state trajectory, one row per grid node.
Matrix cholera_trajectory(std::span<const double> xi, const TimeRule& grid,
                          const OdeConfig& cfg);

// ---------------------------------------------------------------------------
// Uniform model handle used by the ensemble and sensitivity layers. eval must
// be a pure function of (xi, grid) so samples may run concurrently.

struct ProcessModel {
  std::string id;
  int dim = 0;
  std::vector<std::string> param_names;
  std::function<std::vector<double>(std::span<const double> xi, const TimeRule&)> eval;
};

ProcessModel make_oscillator_model();
ProcessModel make_cholera_model(const OdeConfig& cfg = {});

}  // namespace tsens
