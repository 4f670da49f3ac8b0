#include "tsens/cs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsens {

void project_l1_ball(std::span<double> v, double tau) {
  if (tau <= 0.0) {
    std::fill(v.begin(), v.end(), 0.0);
    return;
  }
  double norm1 = 0.0;
  for (double x : v) norm1 += std::abs(x);
  if (norm1 <= tau) return;
  // Duchi et al. exact projection via sorted soft-threshold search.
  std::vector<double> mags(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) mags[i] = std::abs(v[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    cum += mags[j];
    const double cand = (cum - tau) / static_cast<double>(j + 1);
    if (cand >= mags[j] - 0.0) break;
    theta = cand;
  }
  for (double& x : v) {
    const double mag = std::abs(x) - theta;
    x = mag > 0.0 ? (x > 0.0 ? mag : -mag) : 0.0;
  }
}

namespace {

struct GramProblem {
  Matrix g;               // Lambda^T Lambda, P x P
  std::vector<double> b;  // Lambda^T d
  double dtd = 0.0;       // d^T d
  double lip = 1.0;       // estimate of 2*lambda_max(G)

  double objective(std::span<const double> c, std::span<double> gc_buf) const {
    kernels::matvec(g, c, gc_buf, Exec::serial);
    double quad = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      quad += c[i] * gc_buf[i];
      lin += b[i] * c[i];
    }
    return quad - 2.0 * lin + dtd;
  }
};

GramProblem build_gram(const Matrix& lambda, std::span<const double> d) {
  GramProblem prob;
  const std::size_t p = lambda.cols();
  prob.g = Matrix(p, p);
  // G = Lambda^T Lambda (serial: problems are small, callers parallelize
  // across independent fits)
  for (std::size_t j = 0; j < lambda.rows(); ++j) {
    const double* row = lambda.data() + j * p;
    for (std::size_t a = 0; a < p; ++a) {
      if (row[a] == 0.0) continue;
      for (std::size_t c = a; c < p; ++c) prob.g(a, c) += row[a] * row[c];
    }
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t c = 0; c < a; ++c) prob.g(a, c) = prob.g(c, a);
  prob.b.assign(p, 0.0);
  for (std::size_t j = 0; j < lambda.rows(); ++j) {
    const double* row = lambda.data() + j * p;
    for (std::size_t a = 0; a < p; ++a) prob.b[a] += row[a] * d[j];
  }
  prob.dtd = dot(d, d);
  // power iteration for the Lipschitz constant of the gradient
  std::vector<double> v(p, 1.0 / std::sqrt(static_cast<double>(p))), gv(p);
  double lam = 0.0;
  for (int it = 0; it < 30; ++it) {
    kernels::matvec(prob.g, v, gv, Exec::serial);
    lam = norm2(gv);
    if (lam <= 0.0) break;
    for (std::size_t i = 0; i < p; ++i) v[i] = gv[i] / lam;
  }
  prob.lip = std::max(2.0 * lam, 1e-300);
  return prob;
}

struct SpgOutcome {
  bool converged = false;
  int iterations = 0;
  double pg_norm = 0.0;
};

// Spectral projected gradient on the l1 ball (nonmonotone Grippo-style
// reference over the last 10 objective values).
SpgOutcome spg_l1(const GramProblem& prob, double tau, double tol, int max_iter,
                  std::vector<double>& c) {
  const std::size_t p = prob.b.size();
  c.resize(p, 0.0);
  project_l1_ball(c, tau);

  std::vector<double> grad(p), gc(p), trial(p), grad_new(p);
  const auto compute_grad = [&](std::span<const double> x, std::span<double> g) {
    kernels::matvec(prob.g, x, gc, Exec::serial);
    for (std::size_t i = 0; i < p; ++i) g[i] = 2.0 * (gc[i] - prob.b[i]);
  };

  // gradient scale for the relative stopping test
  double gscale = 0.0;
  for (double bi : prob.b) gscale = std::max(gscale, std::abs(2.0 * bi));
  gscale = std::max(gscale, 1e-300);

  compute_grad(c, grad);
  double obj = prob.objective(c, gc);
  std::vector<double> recent_obj(10, obj);
  double step = 1.0 / prob.lip;

  SpgOutcome out;
  for (int it = 1; it <= max_iter; ++it) {
    // projected-gradient optimality measure at the reference step 1/L
    double pg = 0.0;
    for (std::size_t i = 0; i < p; ++i) trial[i] = c[i] - grad[i] / prob.lip;
    project_l1_ball(trial, tau);
    for (std::size_t i = 0; i < p; ++i) {
      const double d = (c[i] - trial[i]) * prob.lip;
      pg += d * d;
    }
    pg = std::sqrt(pg);
    out.pg_norm = pg;
    out.iterations = it - 1;
    if (pg <= tol * gscale) {
      out.converged = true;
      return out;
    }

    const double ref = *std::max_element(recent_obj.begin(), recent_obj.end());
    double s = step;
    double obj_new = 0.0;
    for (int bt = 0;; ++bt) {
      for (std::size_t i = 0; i < p; ++i) trial[i] = c[i] - s * grad[i];
      project_l1_ball(trial, tau);
      obj_new = prob.objective(trial, gc);
      double decr = 0.0;
      for (std::size_t i = 0; i < p; ++i) decr += grad[i] * (trial[i] - c[i]);
      if (obj_new <= ref + 1e-4 * decr || bt >= 50) break;
      s *= 0.5;
    }

    compute_grad(trial, grad_new);
    double sy = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double si = trial[i] - c[i];
      ss += si * si;
      sy += si * (grad_new[i] - grad[i]);
    }
    step = (sy > 1e-300) ? std::clamp(ss / sy, 1e-8 / prob.lip, 1e8 / prob.lip)
                         : 1.0 / prob.lip;
    c.swap(trial);
    grad.swap(grad_new);
    obj = obj_new;
    recent_obj[it % recent_obj.size()] = obj;
  }
  out.iterations = max_iter;
  return out;
}

}  // namespace

std::vector<double> ridge_solve(const Matrix& lambda, std::span<const double> d,
                                double mu_rel) {
  GramProblem prob = build_gram(lambda, d);
  const std::size_t p = prob.b.size();
  double tr = 0.0;
  for (std::size_t i = 0; i < p; ++i) tr += prob.g(i, i);
  const double mu = std::max(mu_rel * tr / static_cast<double>(p), 1e-300);
  Matrix chol = prob.g;
  for (std::size_t i = 0; i < p; ++i) chol(i, i) += mu;
  if (!cholesky_factor(chol)) {
    // heavier regularization as a fallback for rank-deficient designs
    chol = prob.g;
    for (std::size_t i = 0; i < p; ++i) chol(i, i) += 1e6 * mu;
    if (!cholesky_factor(chol)) throw DegenerateError("ridge_solve: Gram matrix is singular");
  }
  std::vector<double> c = prob.b;
  cholesky_solve(chol, c);
  return c;
}

CsResult cs_fit(const Matrix& xi, std::span<const double> u, const PcBasis& basis,
                const CsConfig& cfg) {
  if (xi.rows() != u.size() || xi.rows() < 1)
    throw ConfigError("cs_fit: sample/value count mismatch");
  double tau = cfg.tau;
  if (tau < 0.0 || (tau == 0.0 && cfg.tau <= 0.0)) tau = cfg.tau;  // keep literal zero
  if (cfg.tau < 0.0) throw ConfigError("cs_fit: tau must be >= 0 or auto");

  CsResult result;
  result.expansion.basis = basis;

  const Matrix lambda = design_matrix(basis, xi, Exec::serial);
  const GramProblem prob = build_gram(lambda, u);

  result.tau_used = tau;
  std::vector<double> c;
  const SpgOutcome spg = spg_l1(prob, tau, cfg.solver_tol, cfg.max_iter, c);
  result.converged = spg.converged;
  result.iterations = spg.iterations;
  result.pg_norm = spg.pg_norm;
  result.expansion.coeffs = std::move(c);

  std::vector<double> rbuf(xi.rows());
  kernels::matvec(lambda, result.expansion.coeffs, rbuf, Exec::serial);
  double rss = 0.0;
  for (std::size_t j = 0; j < rbuf.size(); ++j) {
    const double r = rbuf[j] - u[j];
    rss += r * r;
  }
  result.residual_norm = std::sqrt(rss);
  return result;
}

double cross_validate_tau(const Matrix& xi, std::span<const double> u, const PcBasis& basis,
                          const CsConfig& cfg) {
  const std::size_t n = xi.rows();
  if (cfg.cv_folds < 2) throw ConfigError("cross_validate_tau: cv_folds must be >= 2");
  if (n < static_cast<std::size_t>(cfg.cv_folds))
    throw ConfigError("cross_validate_tau: need at least cv_folds samples");

  const Matrix lambda = design_matrix(basis, xi, Exec::serial);
  const std::vector<double> ridge = ridge_solve(lambda, u, 1e-8);
  double anchor = 0.0;
  for (double c : ridge) anchor += std::abs(c);
  if (anchor <= 1e-300) return 0.0;  // data indistinguishable from zero

  constexpr int kGrid = 13;
  std::vector<double> taus(kGrid);
  const double lo = std::log(1e-3 * anchor), hi = std::log(10.0 * anchor);
  for (int g = 0; g < kGrid; ++g)
    taus[g] = std::exp(lo + (hi - lo) * g / static_cast<double>(kGrid - 1));

  // deterministic round-robin fold assignment
  std::vector<int> fold(n);
  for (std::size_t j = 0; j < n; ++j) fold[j] = static_cast<int>(j % cfg.cv_folds);

  std::vector<double> heldout(kGrid, 0.0);
  for (int f = 0; f < cfg.cv_folds; ++f) {
    std::size_t ntr = 0;
    for (std::size_t j = 0; j < n; ++j) ntr += (fold[j] != f);
    Matrix ltr(ntr, basis.size());
    std::vector<double> dtr(ntr);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (fold[j] == f) continue;
      for (std::size_t k = 0; k < basis.size(); ++k) ltr(r, k) = lambda(j, k);
      dtr[r++] = u[j];
    }
    const GramProblem prob = build_gram(ltr, dtr);
    std::vector<double> c(basis.size(), 0.0);
    for (int g = 0; g < kGrid; ++g) {  // warm start along the tau path
      spg_l1(prob, taus[g], cfg.solver_tol, cfg.max_iter, c);
      double sse = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (fold[j] != f) continue;
        double pred = 0.0;
        for (std::size_t k = 0; k < basis.size(); ++k)
          if (c[k] != 0.0) pred += c[k] * lambda(j, k);
        const double rr = pred - u[j];
        sse += rr * rr;
      }
      heldout[g] += sse;
    }
  }

  // smallest residual wins; ties go to the largest tau
  int best = 0;
  for (int g = 1; g < kGrid; ++g)
    if (heldout[g] <= heldout[best] * (1.0 + 1e-12)) best = g;
  return taus[best];
}

}  // namespace tsens
