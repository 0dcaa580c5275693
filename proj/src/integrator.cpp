#include "bosekin/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bosekin {

namespace {

std::vector<double> log_fugacity(const DistributionState& state) {
  std::vector<double> phi(state.values.size());
  for (size_t i = 0; i < phi.size(); ++i) {
    const double f = std::max(state.values[i], 1e-300);
    phi[i] = std::log(f / (1.0 + f));
  }
  return phi;
}

std::vector<double> projected_rate(const DistributionState& state,
                                   const CollisionRates& rates,
                                   const CollisionOperator& op) {
  // Remove the discrete energy production from q. The correction direction is
  // f E rather than E alone: it vanishes on empty nodes, so the projection
  // cannot push the positivity-limited step into the clamp.
  const RadialGrid& g = op.grid();
  const int n = g.size();
  std::vector<double> e(n), dir(n);
  for (int i = 0; i < n; ++i) {
    e[i] = energy(g.nodes[i], op.params());
    dir[i] = state.values[i] * e[i];
  }
  const double qe = op.weak_form(rates.q, e);
  const double de = op.weak_form(dir, e);
  std::vector<double> out = rates.q;
  if (de > 0.0) {
    const double c = qe / de;
    for (int i = 0; i < n; ++i) out[i] -= c * dir[i];
  }
  return out;
}

TrajectoryPoint make_row(double t, const DistributionState& state,
                         const CollisionRates& rates, const CollisionOperator& op,
                         const StepControls& controls, double h_used,
                         double clamped_total) {
  const PhysicalParams& params = op.params();
  TrajectoryPoint row;
  row.t = t;
  row.mass = moment(state, params, 0.0);
  row.energy = moment(state, params, 1.0);
  row.entropy = entropy(state);
  row.m2 = moment(state, params, 2.0);
  row.m3 = moment(state, params, 3.0);
  row.m_nstar = moment(state, params, static_cast<double>(controls.n_star));
  row.h_used = h_used;
  row.min_f = *std::min_element(state.values.begin(), state.values.end());
  row.clamped = clamped_total;

  const RadialGrid& g = op.grid();
  std::vector<double> e(g.size()), ones(g.size(), 1.0);
  for (int i = 0; i < g.size(); ++i) e[i] = energy(g.nodes[i], params);
  row.res_energy = op.weak_form(rates.q, e);
  row.res_mass_c22 = op.weak_form(rates.c22, ones);
  row.dissipation = op.weak_form(rates.q, log_fugacity(state));
  row.c22_gain_l1 = op.weak_form(rates.c22_gain, ones);
  std::vector<double> loss(g.size());
  for (int i = 0; i < g.size(); ++i) loss[i] = state.values[i] * rates.c22_minus[i];
  row.c22_loss_l1 = op.weak_form(loss, ones);
  return row;
}

}  // namespace

void validate(const StepControls& controls) {
  if (!(controls.theta > 0.0 && controls.theta < 1.0)) {
    throw std::domain_error("StepControls: theta must lie in (0, 1)");
  }
  if (!(controls.h_max > 0.0)) throw std::domain_error("StepControls: h_max must be > 0");
  if (!(controls.t_end > 0.0)) throw std::domain_error("StepControls: t_end must be > 0");
  if (!(controls.record_every > 0.0)) {
    throw std::domain_error("StepControls: record_every must be > 0");
  }
}

double positivity_step_bound(const CollisionRates& rates) {
  double qmax = 0.0;
  for (double v : rates.q_minus) qmax = std::max(qmax, v);
  return qmax > 0.0 ? 1.0 / qmax : std::numeric_limits<double>::infinity();
}

StepResult step(const DistributionState& state, const CollisionRates& rates,
                const StepControls& controls, const CollisionOperator& op,
                double h_cap) {
  const double h_plus = positivity_step_bound(rates);
  double h = std::min({controls.h_max, controls.theta * h_plus, h_cap});
  if (!(h > 1e-14)) {
    const auto stiff = std::max_element(rates.q_minus.begin(), rates.q_minus.end());
    const int node = static_cast<int>(stiff - rates.q_minus.begin());
    throw std::runtime_error("step underflow: loss frequency " + std::to_string(*stiff) +
                             " at node " + std::to_string(node));
  }

  const std::vector<double>* rate = &rates.q;
  std::vector<double> fixed;
  if (controls.conservation_fix) {
    fixed = projected_rate(state, rates, op);
    rate = &fixed;
  }

  StepResult result;
  std::vector<double> next(state.values.size());
  for (size_t i = 0; i < next.size(); ++i) {
    double v = state.values[i] + h * (*rate)[i];
    if (v < 0.0) {
      result.clamped += -v;
      v = 0.0;
    }
    next[i] = v;
  }
  result.state = DistributionState(state.grid, std::move(next));
  result.h_used = h;
  return result;
}

TrajectoryRecord evolve(const DistributionState& initial, const StepControls& controls,
                        const CollisionOperator& op) {
  validate(controls);
  TrajectoryRecord traj;
  traj.n_star = controls.n_star;

  DistributionState state = initial;
  double t = 0.0;
  double h_last = 0.0;
  double next_record = 0.0;
  const double eps = 1e-12 * controls.t_end;

  try {
    while (true) {
      CollisionRates rates = op.apply(state);
      if (t >= next_record - eps) {
        traj.rows.push_back(make_row(t, state, rates, op, controls, h_last,
                                     traj.clamped_total));
        traj.snapshot_times.push_back(t);
        traj.snapshots.push_back(state);
        next_record += controls.record_every;
      }
      if (t >= controls.t_end - eps) break;
      const double h_cap = std::min(next_record, controls.t_end) - t;
      StepResult res = step(state, rates, controls, op, h_cap);
      state = std::move(res.state);
      traj.clamped_total += res.clamped;
      h_last = res.h_used;
      t += res.h_used;
    }
  } catch (const std::exception& err) {
    traj.aborted = true;
    traj.abort_reason = err.what();
  }
  return traj;
}

OrderCheckResult richardson_order_check(const DistributionState& initial,
                                        const CollisionOperator& op, double h,
                                        double t_short) {
  auto run_fixed = [&](double step_size) {
    DistributionState state = initial;
    const int steps = static_cast<int>(std::llround(t_short / step_size));
    for (int s = 0; s < steps; ++s) {
      CollisionRates rates = op.apply(state);
      std::vector<double> next(state.values.size());
      for (size_t i = 0; i < next.size(); ++i) {
        next[i] = std::max(0.0, state.values[i] + step_size * rates.q[i]);
      }
      state = DistributionState(state.grid, std::move(next));
    }
    return state;
  };

  const DistributionState f_h = run_fixed(h);
  const DistributionState f_h2 = run_fixed(0.5 * h);
  const DistributionState f_h4 = run_fixed(0.25 * h);

  OrderCheckResult result;
  result.err_coarse = l1_distance(f_h, f_h2);
  result.err_fine = l1_distance(f_h2, f_h4);
  const double scale = l1_norm_momentum(initial, 0.0);
  if (result.err_fine <= 1e-13 * std::max(scale, 1e-300)) {
    result.defined = false;  // differences at round-off (e.g. equilibrium data)
    return result;
  }
  result.observed_order = std::log2(result.err_coarse / result.err_fine);
  result.defined = true;
  return result;
}

}  // namespace bosekin
