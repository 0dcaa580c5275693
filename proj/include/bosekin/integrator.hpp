#pragma once

#include <limits>
#include <string>
#include <vector>

#include "bosekin/collision.hpp"
#include "bosekin/state.hpp"

namespace bosekin {

struct StepControls {
  double h_max = 0.02;         // step cap
  double theta = 0.5;          // fraction of the positivity-limited step, in (0, 1)
  double t_end = 1.0;          // horizon
  double record_every = 0.05;  // diagnostic cadence (time units)
  bool conservation_fix = false;
  int n_star = 7;              // highest recorded moment order
};

void validate(const StepControls& controls);

/// One diagnostic row. The residual columns are the discrete weak-form
/// integrals of the rates active at that time (rate units), recorded so the
/// audits are pure functions of the trajectory.
struct TrajectoryPoint {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m_nstar = 0.0;
  double h_used = 0.0;
  double min_f = 0.0;
  double clamped = 0.0;          // cumulative clamped magnitude up to t
  double res_energy = 0.0;       // weak_form(f, E, q)
  double res_mass_c22 = 0.0;     // weak_form(f, 1, c22)
  double dissipation = 0.0;      // weak_form(f, ln(f/(1+f)), q)
  double c22_gain_l1 = 0.0;      // scale for the mass-neutrality audit
  double c22_loss_l1 = 0.0;
};

struct TrajectoryRecord {
  std::vector<TrajectoryPoint> rows;
  std::vector<double> snapshot_times;
  std::vector<DistributionState> snapshots;
  double clamped_total = 0.0;
  int n_star = 7;
  bool aborted = false;
  std::string abort_reason;
};

/// Largest step keeping f + h q >= 0 node-wise: 1 / max_i q_minus_i
/// (infinity when the loss frequency vanishes).
double positivity_step_bound(const CollisionRates& rates);

struct StepResult {
  DistributionState state;
  double h_used = 0.0;
  double clamped = 0.0;  // total magnitude clipped at zero (round-off scale)
};

/// Forward Euler with the positivity-limited step h = min(h_max, theta/max q^-).
/// With conservation_fix the rate is first projected onto the discrete
/// zero-energy-production hyperplane. h_cap additionally bounds the step
/// (used to land exactly on record times and the horizon).
StepResult step(const DistributionState& state, const CollisionRates& rates,
                const StepControls& controls, const CollisionOperator& op,
                double h_cap = std::numeric_limits<double>::infinity());

TrajectoryRecord evolve(const DistributionState& initial, const StepControls& controls,
                        const CollisionOperator& op);

struct OrderCheckResult {
  double observed_order = 0.0;
  bool defined = false;   // false when the differences sit at round-off
  double err_coarse = 0.0;
  double err_fine = 0.0;
};

/// Richardson check on a short horizon with fixed steps h, h/2, h/4.
OrderCheckResult richardson_order_check(const DistributionState& initial,
                                        const CollisionOperator& op, double h,
                                        double t_short);

}  // namespace bosekin
