#include "bosekin/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bosekin {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

DistributionState::DistributionState(std::shared_ptr<const RadialGrid> g,
                                     std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw std::invalid_argument("DistributionState: null grid");
  if (values.size() != grid->nodes.size()) {
    throw std::invalid_argument("DistributionState: values/grid size mismatch");
  }
  for (double f : values) {
    if (!std::isfinite(f) || f < 0.0) {
      throw std::invalid_argument("DistributionState: values must be finite and >= 0");
    }
  }
}

DistributionState zero_state(std::shared_ptr<const RadialGrid> grid) {
  const size_t n = grid->nodes.size();
  return DistributionState(std::move(grid), std::vector<double>(n, 0.0));
}

double moment(const DistributionState& state, const PhysicalParams& params, double k) {
  if (k < 0.0) throw std::domain_error("moment: order must be >= 0");
  const RadialGrid& g = *state.grid;
  double sum = 0.0;
  for (int i = 0; i < state.size(); ++i) {
    const double u = g.nodes[i];
    double w = g.weights[i] * u * u * state.values[i];
    if (k != 0.0) w *= std::pow(energy(u, params), k);
    sum += w;
  }
  return kFourPi * sum;
}

double l1_norm_momentum(const DistributionState& state, double m) {
  const RadialGrid& g = *state.grid;
  double sum = 0.0;
  for (int i = 0; i < state.size(); ++i) {
    const double u = g.nodes[i];
    sum += g.weights[i] * u * u * std::abs(state.values[i]) * (m == 0.0 ? 1.0 : std::pow(u, m));
  }
  return kFourPi * sum;
}

double l1_norm_energy(const DistributionState& state, const PhysicalParams& params,
                      double m) {
  const RadialGrid& g = *state.grid;
  double sum = 0.0;
  for (int i = 0; i < state.size(); ++i) {
    const double u = g.nodes[i];
    const double weight = 1.0 + std::pow(energy(u, params), 0.5 * m);
    sum += g.weights[i] * u * u * std::abs(state.values[i]) * weight;
  }
  return kFourPi * sum;
}

double l1_distance(const DistributionState& a, const DistributionState& b) {
  if (a.grid != b.grid) throw std::invalid_argument("l1_distance: grids differ");
  const RadialGrid& g = *a.grid;
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double u = g.nodes[i];
    sum += g.weights[i] * u * u * std::abs(a.values[i] - b.values[i]);
  }
  return kFourPi * sum;
}

double entropy(const DistributionState& state) {
  const RadialGrid& g = *state.grid;
  double sum = 0.0;
  for (int i = 0; i < state.size(); ++i) {
    const double f = state.values[i];
    if (f <= 0.0) continue;
    const double u = g.nodes[i];
    sum += g.weights[i] * u * u * (f * std::log(f) - (1.0 + f) * std::log1p(f));
  }
  return kFourPi * sum;
}

DistributionState bose_einstein(double c, std::shared_ptr<const RadialGrid> grid,
                                const PhysicalParams& params, double a) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::domain_error("bose_einstein: inverse-energy scale must be > 0");
  }
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw std::domain_error("bose_einstein: gap must be >= 0");
  }
  std::vector<double> values(grid->nodes.size());
  for (size_t i = 0; i < values.size(); ++i) {
    values[i] = 1.0 / std::expm1(a + c * energy(grid->nodes[i], params));
  }
  return DistributionState(std::move(grid), std::move(values));
}

double fit_equilibrium_c(double energy_target, std::shared_ptr<const RadialGrid> grid,
                         const PhysicalParams& params) {
  if (!(energy_target > 0.0) || !std::isfinite(energy_target)) {
    throw std::domain_error("fit_equilibrium_c: target must be positive and finite");
  }
  auto m1_of = [&](double c) { return moment(bose_einstein(c, grid, params), params, 1.0); };
  // m_1 is strictly decreasing in c; bracket by doubling.
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (m1_of(lo) < energy_target) {
    lo *= 0.5;
    if (++guard > 200) {
      throw std::runtime_error("fit_equilibrium_c: target above attainable range, m1(" +
                               std::to_string(lo) + ") = " + std::to_string(m1_of(lo)));
    }
  }
  guard = 0;
  while (m1_of(hi) > energy_target) {
    hi *= 2.0;
    if (++guard > 200) {
      throw std::runtime_error("fit_equilibrium_c: target below attainable range, m1(" +
                               std::to_string(hi) + ") = " + std::to_string(m1_of(hi)));
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m1 = m1_of(mid);
    if (std::abs(m1 - energy_target) <= 1e-8 * energy_target) return mid;
    (m1 > energy_target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FeasibleReport in_feasible_set(const DistributionState& state,
                               const PhysicalParams& params,
                               const FeasibleSetSpec& spec) {
  FeasibleReport report;
  report.positive =
      std::all_of(state.values.begin(), state.values.end(), [](double f) { return f >= 0.0; });
  report.mass = moment(state, params, 0.0);
  report.energy = moment(state, params, 1.0);
  report.moment_nstar = moment(state, params, static_cast<double>(spec.n_star));
  report.mass_ok = report.mass <= spec.c0;
  report.energy_ok =
      std::abs(report.energy - spec.c1) <= spec.energy_rtol * std::max(std::abs(spec.c1), 1e-300);
  report.moment_ok = report.moment_nstar <= spec.c_nstar;
  return report;
}

EnergyInterpolant::EnergyInterpolant(const DistributionState& state,
                                     const PhysicalParams& params)
    : params_(params) {
  const int n = state.size();
  x_.resize(n);
  y_ = state.values;
  for (int i = 0; i < n; ++i) x_[i] = energy(state.grid->nodes[i], params);
  e_cap_ = energy(state.grid->u_max, params);
  m_.assign(n, 0.0);
  if (n < 3) return;

  // Natural cubic spline: tridiagonal solve for the second derivatives.
  std::vector<double> h(n - 1);
  for (int i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];
  std::vector<double> diag(n, 1.0), rhs(n, 0.0), upper(n, 0.0);
  for (int i = 1; i + 1 < n; ++i) {
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    upper[i] = h[i];
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }
  for (int i = 2; i + 1 < n; ++i) {
    const double factor = h[i - 1] / diag[i - 1];
    diag[i] -= factor * upper[i - 1];
    rhs[i] -= factor * rhs[i - 1];
  }
  for (int i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
  }
}

int EnergyInterpolant::interval_of_energy(double e) const {
  const int n = static_cast<int>(x_.size());
  if (e <= x_.front()) return -1;
  if (e >= x_.back()) return n - 1;  // flat extension up to e_cap_, then zero
  const auto it = std::upper_bound(x_.begin(), x_.end(), e);
  return static_cast<int>(it - x_.begin()) - 1;
}

double EnergyInterpolant::at_energy_in_interval(double e, int interval) const {
  const int n = static_cast<int>(x_.size());
  if (interval < 0) return y_.front();
  if (interval >= n - 1) return (e <= e_cap_) ? y_.back() : 0.0;
  const double h = x_[interval + 1] - x_[interval];
  const double a = (x_[interval + 1] - e) / h;
  const double b = 1.0 - a;
  const double v = a * y_[interval] + b * y_[interval + 1] +
                   ((a * a * a - a) * m_[interval] + (b * b * b - b) * m_[interval + 1]) *
                       h * h / 6.0;
  return std::max(v, 0.0);
}

double EnergyInterpolant::at_energy(double e) const {
  return at_energy_in_interval(e, interval_of_energy(e));
}

double EnergyInterpolant::at_momentum(double u) const {
  return at_energy(energy(u, params_));
}

}  // namespace bosekin
