#include "tsens/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>

namespace tsens {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Rule1D gauss_legendre(int n) {
  if (n < 1) throw ConfigError("gauss_legendre: n must be >= 1");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 1.0;
    return rule;
  }
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    // Weight 2/((1-x^2) P'^2), halved for the normalized measure.
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact symmetry at the center
  return rule;
}

Rule1D clenshaw_curtis(int m) {
  if (m < 1 || (m != 1 && m % 2 == 0))
    throw ConfigError("clenshaw_curtis: m must be 1 or odd >= 3");
  Rule1D rule;
  if (m == 1) {
    rule.nodes = {0.0};
    rule.weights = {1.0};
    return rule;
  }
  const int n = m - 1;  // even
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int j = 0; j <= n; ++j) {
    rule.nodes[j] = -std::cos(std::numbers::pi * j / n);
    double s = 1.0;
    for (int k = 1; k <= n / 2; ++k) {
      const double bk = (k == n / 2) ? 1.0 : 2.0;
      s -= bk / (4.0 * k * k - 1.0) * std::cos(2.0 * std::numbers::pi * k * j / n);
    }
    const double cj = (j == 0 || j == n) ? 1.0 : 2.0;
    rule.weights[j] = 0.5 * cj * s / n;  // halved: normalized measure
  }
  rule.nodes[n / 2] = 0.0;
  return rule;
}

ParamRule tensor_rule(const Rule1D& rule, int dim, std::size_t cap) {
  if (dim < 1) throw ConfigError("tensor_rule: dim must be >= 1");
  const std::size_t n1 = rule.nodes.size();
  // Overflow-safe count check before materializing anything.
  if (dim * std::log(static_cast<double>(n1)) > std::log(static_cast<double>(cap)))
    throw ConfigError("tensor_rule: node count " + std::to_string(n1) + "^" +
                      std::to_string(dim) + " exceeds cap " + std::to_string(cap));
  std::size_t count = 1;
  for (int d = 0; d < dim; ++d) count *= n1;

  ParamRule out;
  out.dim = dim;
  out.kind = "tensor";
  out.exact_total_degree = static_cast<int>(2 * n1 - 1);
  out.nodes.reserve(count);
  out.weights.reserve(count);
  std::vector<std::size_t> idx(dim, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<double> node(dim);
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      node[d] = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    out.nodes.push_back(std::move(node));
    out.weights.push_back(w);
    for (int d = dim - 1; d >= 0; --d) {
      if (++idx[d] < n1) break;
      idx[d] = 0;
    }
  }
  return out;
}

namespace {

int cc_points_at_level(int k) {  // 1-based level index
  return k == 1 ? 1 : (1 << (k - 1)) + 1;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Enumerate multi-indices i in [1..]^dim with given |i|_1; callback per index.
template <typename F>
void for_compositions(int total, int dim, std::vector<int>& idx, int pos, F&& f) {
  if (pos == dim - 1) {
    idx[pos] = total;
    f(idx);
    return;
  }
  const int remaining_min = dim - pos - 1;
  for (int v = 1; v <= total - remaining_min; ++v) {
    idx[pos] = v;
    for_compositions(total - v, dim, idx, pos + 1, f);
  }
}

}  // namespace

ParamRule smolyak_rule(int level, int dim, std::size_t cap) {
  if (level < 0) throw ConfigError("smolyak_rule: level must be >= 0");
  if (dim < 1) throw ConfigError("smolyak_rule: dim must be >= 1");

  const int max_lvl = level + 1;  // deepest 1D level used
  std::vector<Rule1D> rules(max_lvl + 1);
  for (int k = 1; k <= max_lvl; ++k) rules[k] = clenshaw_curtis(cc_points_at_level(k));
  const int m_max = cc_points_at_level(max_lvl);

  // Key nodes by their integer position in the finest 1D rule so that nested
  // points merge exactly.
  const auto point_id = [&](int k, int j) -> int {
    const int mk = cc_points_at_level(k);
    if (mk == 1) return (m_max - 1) / 2;
    return j * ((m_max - 1) / (mk - 1));
  };

  std::map<std::vector<int>, double> acc;
  const int q = dim + level;
  std::vector<int> li(dim);
  for (int norm = std::max(dim, q - dim + 1); norm <= q; ++norm) {
    const double coeff =
        ((q - norm) % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binom(dim - 1, q - norm));
    for_compositions(norm, dim, li, 0, [&](const std::vector<int>& lv) {
      std::vector<std::size_t> idx(dim, 0);
      std::vector<int> key(dim);
      bool done = false;
      while (!done) {
        double w = coeff;
        for (int d = 0; d < dim; ++d) {
          w *= rules[lv[d]].weights[idx[d]];
          key[d] = point_id(lv[d], static_cast<int>(idx[d]));
        }
        acc[key] += w;
        if (acc.size() > cap)
          throw ConfigError("smolyak_rule: node count exceeds cap " + std::to_string(cap));
        done = true;
        for (int d = dim - 1; d >= 0; --d) {
          if (++idx[d] < rules[lv[d]].nodes.size()) {
            done = false;
            break;
          }
          idx[d] = 0;
        }
      }
    });
  }

  ParamRule out;
  out.dim = dim;
  out.kind = "smolyak";
  out.exact_total_degree = 2 * level + 1;
  out.nodes.reserve(acc.size());
  out.weights.reserve(acc.size());
  const auto& fine = rules[max_lvl].nodes;
  for (const auto& [key, w] : acc) {
    std::vector<double> node(dim);
    for (int d = 0; d < dim; ++d) node[d] = fine[key[d]];
    out.nodes.push_back(std::move(node));
    out.weights.push_back(w);
  }
  return out;
}

TimeRule trapezoid_rule(std::span<const double> t_grid) {
  if (t_grid.size() < 2) throw ConfigError("trapezoid_rule: need at least 2 nodes");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw ConfigError("trapezoid_rule: grid must be strictly increasing");
  TimeRule rule;
  rule.nodes.assign(t_grid.begin(), t_grid.end());
  rule.weights.assign(t_grid.size(), 0.0);
  for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
    const double h = 0.5 * (t_grid[i + 1] - t_grid[i]);
    rule.weights[i] += h;
    rule.weights[i + 1] += h;
  }
  rule.horizon = t_grid.back() - t_grid.front();
  return rule;
}

TimeRule uniform_trapezoid(double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw ConfigError("uniform_trapezoid: T and dt must be > 0");
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  if (n < 1 || std::abs(n * dt - t_end) > 1e-9 * t_end)
    throw ConfigError("uniform_trapezoid: T must be an integer multiple of dt");
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) grid[i] = i * dt;
  grid[n] = t_end;
  return trapezoid_rule(grid);
}

}  // namespace tsens
