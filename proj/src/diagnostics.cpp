#include "bosekin/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bosekin {

ConservationReport conservation_audit(const TrajectoryRecord& traj) {
  if (traj.rows.empty()) throw std::invalid_argument("conservation_audit: empty trajectory");
  ConservationReport report;
  const double e0 = traj.rows.front().energy;
  for (const TrajectoryPoint& row : traj.rows) {
    report.max_energy_drift_rel =
        std::max(report.max_energy_drift_rel, std::abs(row.energy - e0) / std::abs(e0));
    const double scale = std::max({row.c22_gain_l1, row.c22_loss_l1, 1e-300});
    report.max_mass_c22_rel =
        std::max(report.max_mass_c22_rel, std::abs(row.res_mass_c22) / scale);
    report.mass_production.push_back(row.res_energy);
  }
  report.momentum_drift = 0.0;  // odd integrand of a radial state
  return report;
}

HTheoremReport h_theorem_audit(const TrajectoryRecord& traj, double tol_entropy) {
  if (traj.rows.empty()) throw std::invalid_argument("h_theorem_audit: empty trajectory");
  HTheoremReport report;
  if (tol_entropy <= 0.0) {
    // Entropy error is slaved to the same quadrature error as the energy
    // residual; integrate that residual over one record interval.
    double res = 0.0, dt = 0.0;
    for (size_t i = 1; i < traj.rows.size(); ++i) {
      res = std::max(res, std::abs(traj.rows[i].res_energy));
      dt = std::max(dt, traj.rows[i].t - traj.rows[i - 1].t);
    }
    tol_entropy = 10.0 * std::max(res * dt, 1e-14);
  }
  report.tol_entropy = tol_entropy;
  for (size_t i = 0; i < traj.rows.size(); ++i) {
    report.max_dissipation = std::max(report.max_dissipation, traj.rows[i].dissipation);
    if (i > 0) {
      const double ds = traj.rows[i].entropy - traj.rows[i - 1].entropy;
      report.max_entropy_increase = std::max(report.max_entropy_increase, ds);
      if (ds > tol_entropy) ++report.violations;
    }
  }
  return report;
}

RelaxationReport relaxation_audit(const TrajectoryRecord& traj,
                                  const PhysicalParams& params) {
  if (traj.snapshots.empty()) {
    throw std::invalid_argument("relaxation_audit: trajectory has no snapshots");
  }
  RelaxationReport report;
  const DistributionState& last = traj.snapshots.back();
  const double target = moment(last, params, 1.0);
  report.fitted_c = fit_equilibrium_c(target, last.grid, params);
  const DistributionState f_inf = bose_einstein(report.fitted_c, last.grid, params);
  for (const DistributionState& snap : traj.snapshots) {
    report.distance.push_back(l1_distance(snap, f_inf));
  }
  report.final_below_initial = report.distance.back() < report.distance.front();
  return report;
}

MassGrowthFit mass_growth_fit(const TrajectoryRecord& traj) {
  if (traj.rows.size() < 3) throw std::invalid_argument("mass_growth_fit: need >= 3 records");
  MassGrowthFit fit;
  // Least squares of observed slope against (1 + m0), plus the max discrete
  // slope ratio; the envelope is certified with the larger of the two.
  double num = 0.0, den = 0.0, worst = 0.0;
  for (size_t i = 1; i < traj.rows.size(); ++i) {
    const double dt = traj.rows[i].t - traj.rows[i - 1].t;
    if (dt <= 0.0) continue;
    const double slope = (traj.rows[i].mass - traj.rows[i - 1].mass) / dt;
    const double base = 1.0 + traj.rows[i - 1].mass;
    num += slope * base;
    den += base * base;
    worst = std::max(worst, slope / base);
  }
  fit.c_least_squares = den > 0.0 ? std::max(0.0, num / den) : 0.0;
  fit.c_hat = std::max(fit.c_least_squares, worst);
  const double m0 = traj.rows.front().mass;
  double violation = -std::numeric_limits<double>::infinity();
  for (const TrajectoryPoint& row : traj.rows) {
    const double cap = (m0 + 1.0) * std::exp(fit.c_hat * row.t) - 1.0;
    violation = std::max(violation, row.mass - cap);
  }
  fit.max_violation = violation;
  fit.certified = violation <= 1e-10 * std::max(1.0, m0);
  return fit;
}

MomentCapFit moment_cap_audit(const TrajectoryRecord& traj, int order, double headroom) {
  if (traj.rows.size() < 3) throw std::invalid_argument("moment_cap_audit: need >= 3 records");
  auto column = [&](const TrajectoryPoint& row) {
    if (order == 2) return row.m2;
    if (order == 3) return row.m3;
    if (order == traj.n_star) return row.m_nstar;
    throw std::invalid_argument("moment_cap_audit: order not recorded");
  };
  MomentCapFit fit;
  // dy/dt = a + b y dominating every observed slope; least squares first,
  // then a shifted so the inequality holds at all records.
  double sy = 0.0, syy = 0.0, ss = 0.0, ssy = 0.0;
  int count = 0;
  std::vector<double> y, slopes;
  for (size_t i = 1; i < traj.rows.size(); ++i) {
    const double dt = traj.rows[i].t - traj.rows[i - 1].t;
    if (dt <= 0.0) continue;
    const double yi = column(traj.rows[i - 1]);
    const double slope = (column(traj.rows[i]) - yi) / dt;
    y.push_back(yi);
    slopes.push_back(slope);
    sy += yi;
    syy += yi * yi;
    ss += slope;
    ssy += slope * yi;
    ++count;
  }
  const double det = count * syy - sy * sy;
  double b = det > 0.0 ? (count * ssy - sy * ss) / det : 0.0;
  b = std::max(b, 0.0);
  double a = 0.0;
  for (int i = 0; i < count; ++i) a = std::max(a, slopes[i] - b * y[i]);
  a = std::max(a, 0.0);
  fit.a = a;
  fit.b = b;

  const double y0 = column(traj.rows.front());
  double max_ratio = 0.0;
  for (const TrajectoryPoint& row : traj.rows) {
    double cap;
    if (b > 0.0) {
      cap = (y0 + a / b) * std::exp(b * row.t) - a / b;
    } else {
      cap = y0 + a * row.t;
    }
    max_ratio = std::max(max_ratio, column(row) / std::max(cap, 1e-300));
  }
  fit.max_ratio = max_ratio;
  fit.bounded = max_ratio <= headroom;
  return fit;
}

PairSampler::PairSampler(std::shared_ptr<const RadialGrid> grid, uint64_t seed)
    : grid_(std::move(grid)), state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

double PairSampler::uniform() {
  // splitmix64; deterministic across platforms.
  state_ += 0x9e3779b97f4a7c15ull;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

DistributionState PairSampler::next_state() {
  // Component widths stay resolvable by the default grid; profiles much
  // narrower than the panel spacing are outside the discretization's scope.
  const double cap = grid_->u_max;
  double amp[3], mu[3], sigma[3];
  for (int c = 0; c < 3; ++c) {
    amp[c] = std::pow(10.0, -2.0 + 2.0 * uniform());  // log-uniform in [1e-2, 1]
    mu[c] = (0.12 + 0.28 * uniform()) * cap;
    sigma[c] = (0.07 + 0.08 * uniform()) * cap;
  }
  std::vector<double> values(grid_->nodes.size(), 0.0);
  for (size_t i = 0; i < values.size(); ++i) {
    const double u = grid_->nodes[i];
    for (int c = 0; c < 3; ++c) {
      const double z = (u - mu[c]) / sigma[c];
      values[i] += amp[c] * std::exp(-z * z);
    }
  }
  return DistributionState(grid_, std::move(values));
}

std::pair<DistributionState, DistributionState> PairSampler::next_pair() {
  DistributionState f = next_state();
  DistributionState g = next_state();
  return {std::move(f), std::move(g)};
}

namespace {

std::vector<double> difference(const DistributionState& a, const DistributionState& b) {
  std::vector<double> d(a.values.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = a.values[i] - b.values[i];
  return d;
}

double l1_weighted_p(const CollisionOperator& op, std::span<const double> values,
                     double m) {
  const RadialGrid& g = op.grid();
  double sum = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double u = g.nodes[i];
    sum += g.weights[i] * u * u * std::abs(values[i]) * (m == 0.0 ? 1.0 : std::pow(u, m));
  }
  return 4.0 * M_PI * sum;
}

}  // namespace

ProbeResult holder_probe(const CollisionOperator& op, CollisionChannel which, int n,
                         int pairs, uint64_t seed) {
  double shift = 3.0;
  if (which == CollisionChannel::C221) shift = 1.0;
  if (which == CollisionChannel::C222) shift = 0.0;
  PairSampler sampler(op.grid_ptr(), seed);
  ProbeResult result;
  result.seed = seed;
  while (result.samples < pairs) {
    auto [f, g] = sampler.next_pair();
    const std::vector<double> diff = difference(f, g);
    const double denom = l1_weighted_p(op, diff, n + shift) + l1_weighted_p(op, diff, 0.0);
    if (denom <= 0.0) continue;  // sampler must yield distinct pairs
    const std::vector<double> cf = op.channel(f, which);
    const std::vector<double> cg = op.channel(g, which);
    std::vector<double> dc(cf.size());
    for (size_t i = 0; i < dc.size(); ++i) dc[i] = cf[i] - cg[i];
    result.max_ratio = std::max(result.max_ratio, l1_weighted_p(op, dc, n) / denom);
    ++result.samples;
  }
  return result;
}

ProbeResult one_sided_lipschitz_probe(const CollisionOperator& op, int n, int pairs,
                                      uint64_t seed) {
  PairSampler sampler(op.grid_ptr(), seed);
  const RadialGrid& grid = op.grid();
  ProbeResult result;
  result.seed = seed;
  while (result.samples < pairs) {
    auto [f, g] = sampler.next_pair();
    double denom = 0.0;  // ||f - g|| in LL1_{2n}
    for (int i = 0; i < grid.size(); ++i) {
      const double u = grid.nodes[i];
      const double e = energy(u, op.params());
      denom += grid.weights[i] * u * u * std::abs(f.values[i] - g.values[i]) *
               (1.0 + std::pow(e, n));
    }
    denom *= 4.0 * M_PI;
    if (denom <= 0.0) continue;
    const std::vector<double> qf = op.channel(f, CollisionChannel::Q);
    const std::vector<double> qg = op.channel(g, CollisionChannel::Q);
    double num = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      const double u = grid.nodes[i];
      const double e = energy(u, op.params());
      const double df = f.values[i] - g.values[i];
      const double sign = df > 0.0 ? 1.0 : (df < 0.0 ? -1.0 : 0.0);
      num += grid.weights[i] * u * u * (qf[i] - qg[i]) * sign * (1.0 + std::pow(e, n));
    }
    num *= 4.0 * M_PI;
    result.max_ratio = std::max(result.max_ratio, num / denom);
    ++result.samples;
  }
  return result;
}

}  // namespace bosekin
