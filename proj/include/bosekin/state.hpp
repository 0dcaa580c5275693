#pragma once

#include <memory>
#include <vector>

#include "bosekin/grid.hpp"
#include "bosekin/physics.hpp"

namespace bosekin {

/// Nonnegative radial occupation numbers on a RadialGrid. Immutable value
/// semantics: operations return new states.
struct DistributionState {
  std::shared_ptr<const RadialGrid> grid;
  std::vector<double> values;

  DistributionState() = default;
  DistributionState(std::shared_ptr<const RadialGrid> g, std::vector<double> v);

  int size() const { return static_cast<int>(values.size()); }
};

DistributionState zero_state(std::shared_ptr<const RadialGrid> grid);

/// m_k[f] = 4 pi sum_i w_i u_i^2 E(u_i)^k f_i; k = 0 is mass, k = 1 energy.
double moment(const DistributionState& state, const PhysicalParams& params, double k);

/// Momentum-weighted L1 norm: 4 pi sum w u^2 |f| u^m.
double l1_norm_momentum(const DistributionState& state, double m);

/// Energy-weighted norm with weight (1 + E^{m/2}).
double l1_norm_energy(const DistributionState& state, const PhysicalParams& params,
                      double m);

double l1_distance(const DistributionState& a, const DistributionState& b);

/// Entropy functional integral of f ln f - (1+f) ln(1+f); integrand 0 at f = 0.
double entropy(const DistributionState& state);

/// Equilibrium occupation 1 / (exp(a + c E(u)) - 1) sampled on the grid;
/// c > 0, gap a >= 0. The gapless member (a = 0) is the fixed point of the
/// full operator; gapped members are fixed points of the binary channel
/// alone (which conserves mass as well as energy) and stay bounded at zero
/// momentum.
DistributionState bose_einstein(double c, std::shared_ptr<const RadialGrid> grid,
                                const PhysicalParams& params, double a = 0.0);

/// Finds c with m_1[bose_einstein(c)] = energy_target by monotone bisection,
/// to 1e-8 relative. Errors (with the attained bounds) if the target cannot
/// be bracketed on this grid.
double fit_equilibrium_c(double energy_target, std::shared_ptr<const RadialGrid> grid,
                         const PhysicalParams& params);

/// Feasible-set caps: mass cap, pinned energy, and one high-moment cap.
struct FeasibleSetSpec {
  double c0 = 0.0;       // mass cap
  double c1 = 0.0;       // energy pin
  int n_star = 7;        // moment order
  double c_nstar = 0.0;  // moment cap
  double energy_rtol = 1e-6;
};

struct FeasibleReport {
  bool positive = false;     // (S1)
  bool mass_ok = false;      // (S2)
  bool energy_ok = false;    // (S3), tolerance band
  bool moment_ok = false;    // (S4)
  double mass = 0.0;
  double energy = 0.0;
  double moment_nstar = 0.0;
  bool all() const { return positive && mass_ok && energy_ok && moment_ok; }
};

FeasibleReport in_feasible_set(const DistributionState& state,
                               const PhysicalParams& params, const FeasibleSetSpec& spec);

/// C2 cubic-spline interpolant of the occupation numbers against
/// quasiparticle energy, clamped at zero. Constant below the first node;
/// constant between the last node and E(u_max); zero beyond the grid cap.
/// The continuous curvature matters: the collision quadratures sample the
/// interpolant at resolved-delta endpoints that move with the output node,
/// and curvature jumps there would dominate the conservation residuals.
/// Clamping keeps nonnegative states nonnegative; the spline can only
/// undershoot zero next to vanishing data, where the clamp is exact.
class EnergyInterpolant {
 public:
  EnergyInterpolant(const DistributionState& state, const PhysicalParams& params);

  double at_momentum(double u) const;
  double at_energy(double e) const;

  /// Interval lookup split out so hot loops can cache it: the bracketing
  /// index depends only on the grid, not on the state values.
  int interval_of_energy(double e) const;
  double at_energy_in_interval(double e, int interval) const;

 private:
  std::vector<double> x_;  // node energies, strictly increasing
  std::vector<double> y_;  // node values
  std::vector<double> m_;  // spline second derivatives
  double e_cap_ = 0.0;     // E(u_max)
  PhysicalParams params_;
};

}  // namespace bosekin
