#include "tsens/models.hpp"

#include <cmath>

namespace tsens {

double oscillator_eval(double t, const OscillatorParams& p) {
  if (p.beta == 0.0) throw ModelError("oscillator_eval: beta must be nonzero");
  return p.ell * std::exp(-p.alpha * t) *
         (std::cos(p.beta * t) + p.alpha / p.beta * std::sin(p.beta * t));
}

OscillatorParams oscillator_param_map(std::span<const double> xi) {
  if (xi.size() != kOscillatorDim)
    throw ConfigError("oscillator_param_map: expected 3 parameters");
  return {0.5 + 0.125 * xi[0], 25.0 / 8.0 + 5.0 / 8.0 * xi[1], -1.0 + 0.25 * xi[2]};
}

namespace {
constexpr double kCholeraNominal[kCholeraDim] = {
    1.5,           // beta_L
    7.5,           // beta_H
    1.0e6,         // kappa_L
    1.0 / 1560.0,  // b
    168.0 / 5.0,   // chi
    70.0,          // zeta
    7.0 / 30.0,    // delta
    7.0 / 5.0,     // gamma
};
}  // namespace

CholeraParams cholera_param_map(std::span<const double> xi) {
  if (xi.size() != kCholeraDim) throw ConfigError("cholera_param_map: expected 8 parameters");
  double x[kCholeraDim];
  for (int i = 0; i < kCholeraDim; ++i) {
    if (!(xi[i] >= -1.0 && xi[i] <= 1.0))
      throw ConfigError("cholera_param_map: xi[" + std::to_string(i) + "] outside [-1,1]");
    x[i] = kCholeraNominal[i] * (1.0 + 0.1 * xi[i]);
  }
  CholeraParams p;
  p.beta_L = x[0];
  p.beta_H = x[1];
  p.kappa_L = x[2];
  p.kappa_H = x[2] / 700.0;
  p.b = x[3];
  p.chi = x[4];
  p.zeta = x[5];
  p.delta = x[6];
  p.gamma = x[7];
  return p;
}

void cholera_rhs(const CholeraParams& p, std::span<const double> y, std::span<double> dydt) {
  const double s = y[0], infected = y[1], bh = y[3], bl = y[4];
  const double ingest =
      p.beta_L * s * bl / (p.kappa_L + bl) + p.beta_H * s * bh / (p.kappa_H + bh);
  dydt[0] = p.b * kCholeraPopulation - ingest - p.b * s;
  dydt[1] = ingest - (p.gamma + p.b) * infected;
  dydt[2] = p.gamma * infected - p.b * y[2];
  dydt[3] = p.zeta * infected - p.chi * bh;
  dydt[4] = p.chi * bh - p.delta * bl;
}

Matrix cholera_trajectory(std::span<const double> xi, const TimeRule& grid,
                          const OdeConfig& cfg) {
  const CholeraParams p = cholera_param_map(xi);
  const double y0[5] = {kCholeraPopulation - 1.0, 1.0, 0.0, 0.0, 0.0};
  const OdeRhs rhs = [&p](double, std::span<const double> y, std::span<double> dy) {
    cholera_rhs(p, y, dy);
  };
  return integrate_ode(rhs, y0, grid.nodes, cfg);
}

std::vector<double> cholera_infected(std::span<const double> xi, const TimeRule& grid,
                                     const OdeConfig& cfg) {
  const Matrix traj = cholera_trajectory(xi, grid, cfg);
  std::vector<double> infected(traj.rows());
  for (std::size_t m = 0; m < traj.rows(); ++m) infected[m] = traj(m, 1);
  return infected;
}

ProcessModel make_oscillator_model() {
  ProcessModel model;
  model.id = "oscillator";
  model.dim = kOscillatorDim;
  model.param_names = {"alpha", "beta", "ell"};
  model.eval = [](std::span<const double> xi, const TimeRule& grid) {
    const OscillatorParams p = oscillator_param_map(xi);
    std::vector<double> y(grid.nodes.size());
    for (std::size_t m = 0; m < y.size(); ++m) y[m] = oscillator_eval(grid.nodes[m], p);
    return y;
  };
  return model;
}

ProcessModel make_cholera_model(const OdeConfig& cfg) {
  ProcessModel model;
  model.id = "cholera";
  model.dim = kCholeraDim;
  model.param_names = {"beta_L", "beta_H", "kappa_L", "b", "chi", "zeta", "delta", "gamma"};
  model.eval = [cfg](std::span<const double> xi, const TimeRule& grid) {
    return cholera_infected(xi, grid, cfg);
  };
  return model;
}

}  // namespace tsens
