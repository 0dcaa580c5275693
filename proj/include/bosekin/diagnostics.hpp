#pragma once

#include <cstdint>
#include <vector>

#include "bosekin/collision.hpp"
#include "bosekin/integrator.hpp"
#include "bosekin/state.hpp"

namespace bosekin {

struct ConservationReport {
  double max_energy_drift_rel = 0.0;   // max_t |m1(t) - m1(0)| / m1(0)
  double max_mass_c22_rel = 0.0;       // c22 mass residual over gain/loss scale
  std::vector<double> mass_production; // weak_form residual d m0/dt series
  double momentum_drift = 0.0;         // identically 0 for radial states
};

ConservationReport conservation_audit(const TrajectoryRecord& traj);

struct HTheoremReport {
  double max_entropy_increase = 0.0;   // over consecutive records
  double max_dissipation = 0.0;        // most positive recorded value
  int violations = 0;                  // entropy increases above the tolerance
  double tol_entropy = 0.0;
};

/// tol_entropy <= 0 selects the default: 10x the measured energy-conservation
/// residual of the same trajectory (integrated over a record interval).
HTheoremReport h_theorem_audit(const TrajectoryRecord& traj, double tol_entropy = 0.0);

struct RelaxationReport {
  double fitted_c = 0.0;
  std::vector<double> distance;        // ||f(t) - f_inf||_L1 per snapshot
  bool final_below_initial = false;
};

RelaxationReport relaxation_audit(const TrajectoryRecord& traj,
                                  const PhysicalParams& params);

struct MassGrowthFit {
  double c_hat = 0.0;        // certified growth constant, >= 0
  double c_least_squares = 0.0;
  double max_violation = 0.0;  // worst m0(t) - envelope(t), <= 0 when certified
  bool certified = false;
};

/// Fits dm0/dt <= C (1 + m0) and checks the integrated envelope
/// m0(t) <= (m0(0) + 1) e^{C t} - 1 at every record.
MassGrowthFit mass_growth_fit(const TrajectoryRecord& traj);

struct MomentCapFit {
  double a = 0.0, b = 0.0;   // dominating ODE dy/dt = a + b y
  double max_ratio = 0.0;    // max_t m_k(t) / cap(t)
  bool bounded = false;      // ratio <= headroom
};

/// Dominating-ODE cap for a recorded moment column (2, 3 or n_star order),
/// with the given headroom factor.
MomentCapFit moment_cap_audit(const TrajectoryRecord& traj, int order,
                              double headroom = 10.0);

/// Deterministic sampler of positive radial profiles: three-component
/// Gaussian mixtures with log-uniform amplitudes, supported in the lower
/// half of the grid. The seed fully determines the sequence.
class PairSampler {
 public:
  PairSampler(std::shared_ptr<const RadialGrid> grid, uint64_t seed);
  DistributionState next_state();
  std::pair<DistributionState, DistributionState> next_pair();

 private:
  double uniform();
  std::shared_ptr<const RadialGrid> grid_;
  uint64_t state_;
};

struct ProbeResult {
  double max_ratio = 0.0;
  int samples = 0;
  uint64_t seed = 0;
};

/// Ratio ||C[f]-C[g]||_{L1_n} / (||f-g||_{L1_{n+a}} + ||f-g||_{L1}) with the
/// operator-specific weight shift a = 3 / 1 / 0 for C12 / C221 / C222.
ProbeResult holder_probe(const CollisionOperator& op, CollisionChannel which, int n,
                         int pairs, uint64_t seed);

/// max over pairs of int (Q[f]-Q[g]) sign(f-g) (1+E^n) dp / ||f-g||_{LL1_{2n}}.
ProbeResult one_sided_lipschitz_probe(const CollisionOperator& op, int n, int pairs,
                                      uint64_t seed);

}  // namespace bosekin
