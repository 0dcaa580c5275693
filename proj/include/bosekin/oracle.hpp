#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "bosekin/collision.hpp"
#include "bosekin/physics.hpp"
#include "bosekin/state.hpp"

namespace bosekin {

/// Brute-force reference evaluations: energy deltas replaced by normalized
/// Gaussians of width eps, everything integrated by dense tensor quadrature.
/// Never called by the evolution path; exists to certify the reduced
/// surface weights and the collision quadratures.

enum class SurfaceFamily { S0, S1, S2 };

struct OracleSpec {
  int outer_panels = 64;   // radial panels of the dense rule
  int outer_nodes = 6;
  int window_panels = 12;  // panels across the +-n_sigma window of the Gaussian
  int window_nodes = 8;
  double n_sigma = 8.0;
};

/// Volume integral of F(|x|) * gauss_eps(H_family(x)) dx, the co-area
/// surrogate for the surface integral of F / |grad H|.
/// u_hi caps |x| for the S1/S2 families (F must be negligible beyond it).
double surface_area_reference(double p_mag, SurfaceFamily family,
                              const std::function<double(double)>& F, double eps,
                              const PhysicalParams& params, double u_hi,
                              const OracleSpec& spec = {});

/// Condensate-exchange rate at output magnitude p1 with the momentum delta
/// resolved exactly and the energy delta smoothed.
double c12_reference(const DistributionState& state, double p1, double eps,
                     const PhysicalParams& params, const OracleSpec& spec = {});

/// Binary-collision rate at p1, dense 3-d tensor quadrature of the radial
/// form with the energy delta smoothed.
double c22_reference(const DistributionState& state, double p1, double eps,
                     const PhysicalParams& params, const OracleSpec& spec = {});

struct ScanRoot {
  double q = 0.0;
  int sign_changes = 0;
};

/// Dense sign-change scan of the splitting residual over q in (0, p);
/// flags a geometry violation unless exactly one change is found.
ScanRoot q_gamma_reference(double p_mag, double gamma, const PhysicalParams& params,
                           double resolution_rel = 1e-5);

/// Three-level Richardson extrapolation in eps (eps, eps/2, eps/4) assuming
/// an even-power error expansion; residual is the spread of the two
/// second-level extrapolants.
struct EpsExtrapolation {
  double value = 0.0;
  double residual = 0.0;
  std::array<double, 3> raw{};
};

EpsExtrapolation extrapolate_eps(const std::function<double(double)>& eval, double eps0);

struct WeightCheck {
  std::string family;
  double p_mag = 0.0;
  double reduced = 0.0;   // 1-d integral against the module weight
  double reference = 0.0; // extrapolated smoothed-delta value
  double rel_err = 0.0;
  double extrapolation_residual = 0.0;
};

/// Certifies the reduced weights of all three families against the oracle
/// for a bundle of test integrands and momenta. Threshold is relative.
std::vector<WeightCheck> certify_surface_weights(const PhysicalParams& params,
                                                 const std::vector<double>& p_values,
                                                 double eps0_rel = 0.05,
                                                 const OracleSpec& spec = {});

struct CollisionCheck {
  std::string channel;
  double sup_rel_err = 0.0;  // max_i |impl_i - ref_i| / max_i |ref_i|
  std::vector<double> impl, reference, node;
  double extrapolation_residual = 0.0;
};

/// Node-wise certification of both collision channels on the operator's own
/// grid (meant for coarse certification grids).
std::vector<CollisionCheck> certify_collision(const CollisionOperator& op,
                                              const DistributionState& state,
                                              double eps0_rel = 0.05,
                                              const OracleSpec& spec = {},
                                              int max_nodes = 0);

}  // namespace bosekin
