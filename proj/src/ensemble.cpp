#include "tsens/ensemble.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tsens/rng.hpp"

namespace tsens {

SampleSet draw_samples(int np, std::size_t n, std::uint64_t seed) {
  if (np < 1 || n < 1) throw ConfigError("draw_samples: np and n must be >= 1");
  SampleSet s;
  s.np = np;
  s.seed = seed;
  s.scheme = SampleScheme::monte_carlo;
  s.draws = Matrix(n, np);
  const CounterRng rng(seed, rng_stream::samples);
  for (std::size_t k = 0; k < n; ++k)
    for (int i = 0; i < np; ++i)
      s.draws(k, i) = rng.uniform_pm1(k * static_cast<std::uint64_t>(np) + i);
  return s;
}

SampleSet samples_from_rule(const ParamRule& rule) {
  SampleSet s;
  s.np = rule.dim;
  s.scheme = SampleScheme::quadrature;
  s.nu = rule.weights;
  s.draws = Matrix(rule.nodes.size(), rule.dim);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    for (int d = 0; d < rule.dim; ++d) s.draws(j, d) = rule.nodes[j][d];
  return s;
}

Ensemble evaluate_ensemble(const ProcessModel& model, SampleSet samples, TimeRule time,
                           Exec exec) {
  if (model.dim != samples.np)
    throw ConfigError("evaluate_ensemble: model dimension " + std::to_string(model.dim) +
                      " != sample dimension " + std::to_string(samples.np));
  const std::size_t n = samples.size();
  const std::size_t nq = time.nodes.size();

  Ensemble e;
  e.model_id = model.id;
  e.values = Matrix(nq, n);

  std::string failure;
  bool failed = false;
  const std::int64_t in = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (std::int64_t k = 0; k < in; ++k) {
    if (failed) continue;
    try {
      const std::vector<double> traj = model.eval(samples.draws.row(k), time);
      if (traj.size() != nq) throw ModelError("model returned wrong trajectory length");
      for (std::size_t m = 0; m < nq; ++m) e.values(m, k) = traj[m];
    } catch (const std::exception& ex) {
#pragma omp critical
      if (!failed) {
        failed = true;
        std::ostringstream os;
        os << "evaluate_ensemble: sample " << k << " failed (" << ex.what() << "); xi = [";
        for (int i = 0; i < samples.np; ++i)
          os << (i ? ", " : "") << samples.draws(k, i);
        os << "]";
        failure = os.str();
      }
    }
  }
  if (failed) throw ModelError(failure);

  e.mean.assign(nq, 0.0);
  for (std::size_t m = 0; m < nq; ++m) {
    double acc = 0.0;
    if (samples.scheme == SampleScheme::quadrature) {
      for (std::size_t k = 0; k < n; ++k) acc += samples.nu[k] * e.values(m, k);
    } else {
      for (std::size_t k = 0; k < n; ++k) acc += e.values(m, k);
      acc /= static_cast<double>(n);
    }
    e.mean[m] = acc;
  }
  e.samples = std::move(samples);
  e.time = std::move(time);
  return e;
}

Ensemble center(Ensemble e) {
  if (e.centered) throw ConfigError("center: ensemble is already centered");
  const std::size_t nq = e.values.rows(), n = e.values.cols();
  for (std::size_t m = 0; m < nq; ++m) {
    double* row = e.values.data() + m * n;
    const double mu = e.mean[m];
    for (std::size_t k = 0; k < n; ++k) row[k] -= mu;
  }
  e.centered = true;
  return e;
}

CovMatrix sample_covariance(const Ensemble& e, Exec exec) {
  if (!e.centered) throw ConfigError("sample_covariance: ensemble must be centered first");
  const std::size_t n = e.samples.size();
  CovMatrix cov;
  if (e.samples.scheme == SampleScheme::quadrature) {
    kernels::weighted_gram(e.values, e.samples.nu, cov.k, exec);
    cov.estimator = "quadrature";
  } else {
    if (n < 2) throw ConfigError("sample_covariance: Monte Carlo needs N >= 2");
    kernels::scaled_gram(e.values, 1.0 / static_cast<double>(n - 1), cov.k, exec);
    cov.estimator = "sample-" + std::to_string(n);
  }
  return cov;
}

// --- persistence ------------------------------------------------------------

namespace {

void write_block(std::ofstream& os, const double* data, std::size_t count) {
  os.write(reinterpret_cast<const char*>(data),
           static_cast<std::streamsize>(count * sizeof(double)));
}

void read_block(std::ifstream& is, double* data, std::size_t count) {
  is.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(count * sizeof(double)));
  if (!is) throw ConfigError("ensemble file: truncated data block");
}

}  // namespace

void save_ensemble(const std::filesystem::path& path, const Ensemble& e) {
  nlohmann::json header;
  header["format"] = "tsens-ensemble-v1";
  header["model"] = e.model_id;
  header["Np"] = e.samples.np;
  header["N"] = e.samples.size();
  header["seed"] = e.samples.seed;
  header["T"] = e.time.horizon;
  header["scheme"] =
      e.samples.scheme == SampleScheme::quadrature ? "quadrature" : "monte-carlo";
  header["centered"] = e.centered;
  header["t"] = e.time.nodes;
  header["w"] = e.time.weights;
  header["mean"] = e.mean;

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw ConfigError("save_ensemble: cannot open " + tmp.string());
    os << header.dump() << "\n";
    write_block(os, e.values.data(), e.values.rows() * e.values.cols());
    write_block(os, e.samples.draws.data(), e.samples.draws.rows() * e.samples.draws.cols());
    if (e.samples.scheme == SampleScheme::quadrature)
      write_block(os, e.samples.nu.data(), e.samples.nu.size());
    if (!os) throw ConfigError("save_ensemble: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Ensemble load_ensemble(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("load_ensemble: missing file " + path.string());
  std::string line;
  std::getline(is, line);
  nlohmann::json header = nlohmann::json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("format", "") != "tsens-ensemble-v1")
    throw ConfigError("load_ensemble: " + path.string() + " is not a tsens ensemble file");

  Ensemble e;
  e.model_id = header.at("model").get<std::string>();
  e.samples.np = header.at("Np").get<int>();
  const auto n = header.at("N").get<std::size_t>();
  e.samples.seed = header.at("seed").get<std::uint64_t>();
  e.samples.scheme = header.at("scheme").get<std::string>() == "quadrature"
                         ? SampleScheme::quadrature
                         : SampleScheme::monte_carlo;
  e.centered = header.at("centered").get<bool>();
  e.time.nodes = header.at("t").get<std::vector<double>>();
  e.time.weights = header.at("w").get<std::vector<double>>();
  e.time.horizon = header.at("T").get<double>();
  e.mean = header.at("mean").get<std::vector<double>>();

  const std::size_t nq = e.time.nodes.size();
  if (e.mean.size() != nq || e.time.weights.size() != nq)
    throw ConfigError("load_ensemble: header dimensions are inconsistent");
  for (std::size_t m = 1; m < nq; ++m)
    if (!(e.time.nodes[m] > e.time.nodes[m - 1]))
      throw ConfigError("load_ensemble: time grid must be increasing");

  e.values = Matrix(nq, n);
  read_block(is, e.values.data(), nq * n);
  e.samples.draws = Matrix(n, e.samples.np);
  read_block(is, e.samples.draws.data(), n * e.samples.np);
  if (e.samples.scheme == SampleScheme::quadrature) {
    e.samples.nu.resize(n);
    read_block(is, e.samples.nu.data(), n);
  }
  return e;
}

void export_ensemble_csv(const std::filesystem::path& path, const Ensemble& e) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw ConfigError("export_ensemble_csv: cannot open " + tmp.string());
    os << "t";
    for (std::size_t k = 0; k < e.samples.size(); ++k) os << ",f" << k;
    os << "\n";
    char buf[32];
    for (std::size_t m = 0; m < e.values.rows(); ++m) {
      std::snprintf(buf, sizeof buf, "%.17g", e.time.nodes[m]);
      os << buf;
      for (std::size_t k = 0; k < e.values.cols(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", e.values(m, k));
        os << ',' << buf;
      }
      os << "\n";
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace tsens
