#pragma once

#include "bosekin/physics.hpp"

namespace bosekin {

/// One solved point of a resonance surface in the (gamma, q) parametrization
/// w = gamma p + q e_perp: u = |w|, partner = |p -+ w| for the family.
struct ManifoldPoint {
  double gamma = 0.0;
  double q = 0.0;
  double u = 0.0;
  double partner = 0.0;
};

/// Residual of the splitting resonance at w = gamma p + q e_perp:
/// E(|p - w|) + E(|w|) - E(p). Negative on the open segment (q = 0,
/// gamma in (0,1)), strictly increasing in q.
double h0(double p_mag, double gamma, double q, const PhysicalParams& params);

/// Residual of the merging resonance: E(|p + w|) - E(p) - E(|w|).
/// Positive at q = 0 for gamma > 0, strictly decreasing in q.
double h1(double p_mag, double gamma, double q, const PhysicalParams& params);

/// Transverse root q_gamma of h0 = 0 for gamma in (0, 1), by bisection on
/// (0, p_mag); the bracket is guaranteed by the sign structure of h0.
/// tol_rel scales the residual tolerance by E(p).
double solve_q_gamma_s0(double p_mag, double gamma, const PhysicalParams& params,
                        double tol_rel = 1e-12);

ManifoldPoint point_s0(double p_mag, double gamma, const PhysicalParams& params,
                       double tol_rel = 1e-12);

/// Partner magnitude on the splitting surface: r with E(r) = E(p) - E(u),
/// for 0 < u < p. Satisfies E(u) + E(r) = E(p) and r in (0, p).
double s0_partner(double p_mag, double u, const PhysicalParams& params);

/// Partner magnitude on the merging surface: s with E(s) = E(p) + E(u).
double s1_partner(double p_mag, double u, const PhysicalParams& params);

/// Theta-integrated surface-measure weight of the splitting surface in the
/// radial variable u: integrating F(|w|)/|grad H| over the surface equals
/// the 1-d integral of F(u) * s0_weight(p, u) over u in (0, p).
/// w = 2 pi u r / (p E'(r)) with r = s0_partner(p, u).
double s0_weight(double p_mag, double u, const PhysicalParams& params);

/// Same reduction for the merging surface, u in (0, inf):
/// w = 2 pi u s / (p E'(s)) with s = s1_partner(p, u).
double s1_weight(double p_mag, double u, const PhysicalParams& params);

/// The shifted surface is the merging surface translated by p, so the weight
/// coincides with s1_weight; integrands are evaluated at the partner
/// magnitude s1_partner(p, u) instead of u.
double s2_weight(double p_mag, double u, const PhysicalParams& params);

/// Bound on the longitudinal fraction reached by the merging surface:
/// gamma_p = kappa1 / (2 (kappa2 p^2 + 2 sqrt(kappa2) E(p))).
/// Conservative by at most a factor 2 (the large-q limit of h1 changes sign
/// at kappa1 / (2 (kappa2 p^2 + sqrt(kappa2) E(p)))); the merging surface is
/// empty beyond twice this value for every parameter set.
double gamma_max_s1(double p_mag, const PhysicalParams& params);

}  // namespace bosekin
