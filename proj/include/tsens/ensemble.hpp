#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "tsens/linalg.hpp"
#include "tsens/models.hpp"
#include "tsens/quadrature.hpp"

namespace tsens {

enum class SampleScheme { monte_carlo, quadrature };

struct SampleSet {
  int np = 0;
  Matrix draws;  // N x Np, every entry in [-1,1]
  std::uint64_t seed = 0;
  SampleScheme scheme = SampleScheme::monte_carlo;
  std::vector<double> nu;  // quadrature weights; empty for Monte Carlo

  std::size_t size() const { return draws.rows(); }
};

// N i.i.d. uniform draws on [-1,1]^np, bit-reproducible from the seed.
SampleSet draw_samples(int np, std::size_t n, std::uint64_t seed);

// Wrap quadrature nodes/weights as a sample set.
SampleSet samples_from_rule(const ParamRule& rule);

struct Ensemble {
  std::string model_id;
  TimeRule time;
  SampleSet samples;
  Matrix values;             // N_quad x N, f(t_m, xi^(k)) (centered when flagged)
  std::vector<double> mean;  // weighted column average of the raw values
  bool centered = false;
};

// values[m][k] = f(t_m, xi^(k)); parallel over samples. Model failures are
// rethrown annotated with the sample index and coordinates.
Ensemble evaluate_ensemble(const ProcessModel& model, SampleSet samples, TimeRule time,
                           Exec exec = Exec::parallel);

// Subtract the stored mean trajectory. Double-centering is rejected.
Ensemble center(Ensemble e);

struct CovMatrix {
  Matrix k;  // N_quad x N_quad, symmetric
  std::string estimator;
};

// Sample covariance of a centered ensemble: 1/(N-1) sum of outer products for
// Monte Carlo, nu-weighted outer products (no Bessel correction) for
// quadrature schemes.
CovMatrix sample_covariance(const Ensemble& e, Exec exec = Exec::parallel);

// --- persistence ------------------------------------------------------------
// Single-line JSON header followed by raw little-endian float64 blocks:
// values (N_quad x N row-major), samples (N x Np row-major), and, for
// quadrature schemes, the nu weights.
void save_ensemble(const std::filesystem::path& path, const Ensemble& e);
Ensemble load_ensemble(const std::filesystem::path& path);

// Plot-ready CSV: time in the first column, one column per sample.
void export_ensemble_csv(const std::filesystem::path& path, const Ensemble& e);

}  // namespace tsens
