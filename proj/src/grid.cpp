#include "bosekin/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bosekin {

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_gauss_legendre(n)).first;
  }
  return it->second;
}

void gauss_points_on(double a, double b, int n, std::vector<double>& x,
                     std::vector<double>& w) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    x.push_back(mid + half * rule.nodes[i]);
    w.push_back(half * rule.weights[i]);
  }
}

std::shared_ptr<const RadialGrid> make_radial_grid(int panels, int nodes_per_panel,
                                                   double u_max, double octaves,
                                                   double snap) {
  if (panels < 1 || nodes_per_panel < 1) {
    throw std::invalid_argument("make_radial_grid: need at least one panel and node");
  }
  if (!(u_max > 0.0) || !std::isfinite(u_max)) {
    throw std::invalid_argument("make_radial_grid: u_max must be positive and finite");
  }
  if (!(octaves > 0.0)) {
    throw std::invalid_argument("make_radial_grid: octaves must be positive");
  }
  // Boundaries u_max * 2^(-octaves (panels-j)/panels); the innermost panel
  // starts at 0.
  std::vector<double> bounds(panels + 1);
  bounds[0] = 0.0;
  for (int j = 1; j <= panels; ++j) {
    bounds[j] = u_max * std::exp2(-octaves * (panels - j) / panels);
  }
  if (snap > bounds[1] && snap < u_max) {
    int nearest = 1;
    for (int j = 2; j < panels; ++j) {
      if (std::abs(std::log(bounds[j] / snap)) < std::abs(std::log(bounds[nearest] / snap))) {
        nearest = j;
      }
    }
    bounds[nearest] = snap;
  }
  auto grid = std::make_shared<RadialGrid>();
  grid->u_max = u_max;
  grid->panels = panels;
  grid->nodes_per_panel = nodes_per_panel;
  grid->octaves = octaves;
  for (int j = 1; j <= panels; ++j) {
    gauss_points_on(bounds[j - 1], bounds[j], nodes_per_panel, grid->nodes, grid->weights);
  }
  return grid;
}

}  // namespace bosekin
