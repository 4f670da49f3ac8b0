#include "tsens/ode.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tsens {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Error coefficients (5th-order minus embedded 4th-order weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output coefficients (quartic interpolant).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace

Matrix integrate_ode(const OdeRhs& rhs, std::span<const double> y0,
                     std::span<const double> out_nodes, const OdeConfig& cfg) {
  if (out_nodes.empty()) throw ConfigError("integrate_ode: no output nodes");
  for (std::size_t i = 1; i < out_nodes.size(); ++i)
    if (!(out_nodes[i] > out_nodes[i - 1]))
      throw ConfigError("integrate_ode: output nodes must be increasing");
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
    throw ConfigError("integrate_ode: tolerances must be positive");

  const std::size_t dim = y0.size();
  const double t_end = out_nodes.back();
  Matrix out(out_nodes.size(), dim);

  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim);
  std::vector<double> ytmp(dim), ynew(dim);
  std::vector<double> r1(dim), r2(dim), r3(dim), r4(dim), r5(dim);

  double t = out_nodes.front();
  std::size_t next_out = 0;
  if (t == out_nodes[0]) {
    for (std::size_t i = 0; i < dim; ++i) out(0, i) = y[i];
    next_out = 1;
  }

  rhs(t, y, k1);
  for (double v : k1)
    if (!std::isfinite(v)) throw ModelError("integrate_ode: rhs not finite at initial state");

  double h = cfg.initial_step;
  if (h <= 0.0) {
    // crude starting step from the scale of y and y'
    double dnf = 0.0, dny = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double sk = cfg.abs_tol + cfg.rel_tol * std::abs(y[i]);
      dnf += (k1[i] / sk) * (k1[i] / sk);
      dny += (y[i] / sk) * (y[i] / sk);
    }
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
    h = std::min(h, t_end - t);
  }

  constexpr double beta = 0.04, safe = 0.9, fac_min = 0.2, fac_max = 10.0;
  constexpr double expo = 0.2 - beta * 0.75;
  double err_old = 1e-4;
  long steps = 0;

  while (next_out < out_nodes.size()) {
    if (++steps > cfg.max_steps)
      throw IntegrationError("integrate_ode: max_steps exceeded", t);
    if (t + h > t_end) h = t_end - t;
    if (!(h > std::abs(t) * 1e-14 + 1e-300))
      throw IntegrationError("integrate_ode: step size underflow", t);

    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < dim; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < dim; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs(t + h, ynew, k7);  // FSAL

    double err = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < dim; ++i) {
      const double ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sk = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / sk) * (ei / sk);
      if (!std::isfinite(ynew[i])) finite = false;
    }
    err = std::sqrt(err / dim);
    if (!finite) err = 10.0;

    if (err <= 1.0) {
      // accept; fill dense output on (t, t+h]
      if (next_out < out_nodes.size() && out_nodes[next_out] <= t + h) {
        for (std::size_t i = 0; i < dim; ++i) {
          const double dy = ynew[i] - y[i];
          const double bspl = h * k1[i] - dy;
          r1[i] = y[i];
          r2[i] = dy;
          r3[i] = bspl;
          r4[i] = dy - h * k7[i] - bspl;
          r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                       d7 * k7[i]);
        }
        while (next_out < out_nodes.size() && out_nodes[next_out] <= t + h + 1e-14 * t_end) {
          const double theta = std::clamp((out_nodes[next_out] - t) / h, 0.0, 1.0);
          const double th1 = 1.0 - theta;
          for (std::size_t i = 0; i < dim; ++i)
            out(next_out, i) =
                r1[i] + theta * (r2[i] + th1 * (r3[i] + theta * (r4[i] + th1 * r5[i])));
          ++next_out;
        }
      }
      t += h;
      y.swap(ynew);
      k1.swap(k7);
      const double fac =
          std::clamp(safe * std::pow(err_old, beta) / std::pow(std::max(err, 1e-10), expo),
                     fac_min, fac_max);
      h *= fac;
      err_old = std::max(err, 1e-4);
    } else {
      h *= std::clamp(safe / std::pow(err, 0.2), fac_min, 1.0);
    }
  }
  return out;
}

}  // namespace tsens
