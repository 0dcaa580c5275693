#include "bosekin/manifolds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bosekin {

double h0(double p_mag, double gamma, double q, const PhysicalParams& params) {
  if (!(p_mag > 0.0)) throw std::domain_error("h0: p_mag must be > 0");
  const double u = std::hypot(gamma * p_mag, q);
  const double r = std::hypot((1.0 - gamma) * p_mag, q);
  return energy(r, params) + energy(u, params) - energy(p_mag, params);
}

double h1(double p_mag, double gamma, double q, const PhysicalParams& params) {
  if (!(p_mag > 0.0)) throw std::domain_error("h1: p_mag must be > 0");
  const double u = std::hypot(gamma * p_mag, q);
  const double s = std::hypot((1.0 + gamma) * p_mag, q);
  return energy(s, params) - energy(p_mag, params) - energy(u, params);
}

double solve_q_gamma_s0(double p_mag, double gamma, const PhysicalParams& params,
                        double tol_rel) {
  if (!(p_mag > 0.0)) throw std::domain_error("solve_q_gamma_s0: p_mag must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("solve_q_gamma_s0: gamma must lie in (0, 1)");
  }
  const double tol = tol_rel * energy(p_mag, params);
  double lo = 0.0, hi = p_mag;
  if (!(h0(p_mag, gamma, lo, params) < 0.0) || !(h0(p_mag, gamma, hi, params) > 0.0)) {
    throw std::runtime_error("solve_q_gamma_s0: bracket violated, dispersion misconfigured");
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double res = h0(p_mag, gamma, mid, params);
    if (std::abs(res) <= tol) return mid;
    (res < 0.0 ? lo : hi) = mid;
  }
  return mid;
}

ManifoldPoint point_s0(double p_mag, double gamma, const PhysicalParams& params,
                       double tol_rel) {
  ManifoldPoint pt;
  pt.gamma = gamma;
  pt.q = solve_q_gamma_s0(p_mag, gamma, params, tol_rel);
  pt.u = std::hypot(gamma * p_mag, pt.q);
  pt.partner = std::hypot((1.0 - gamma) * p_mag, pt.q);
  return pt;
}

double s0_partner(double p_mag, double u, const PhysicalParams& params) {
  if (!(u > 0.0 && u < p_mag)) {
    throw std::domain_error("s0_partner: need 0 < u < p_mag, got u = " + std::to_string(u));
  }
  return inverse_energy(energy(p_mag, params) - energy(u, params), params);
}

double s1_partner(double p_mag, double u, const PhysicalParams& params) {
  if (!(p_mag > 0.0) || !(u > 0.0)) {
    throw std::domain_error("s1_partner: need p_mag > 0 and u > 0");
  }
  return inverse_energy(energy(p_mag, params) + energy(u, params), params);
}

double s0_weight(double p_mag, double u, const PhysicalParams& params) {
  const double r = s0_partner(p_mag, u, params);
  return 2.0 * std::numbers::pi * u * momentum_over_energy_derivative(r, params) / p_mag;
}

double s1_weight(double p_mag, double u, const PhysicalParams& params) {
  const double s = s1_partner(p_mag, u, params);
  return 2.0 * std::numbers::pi * u * momentum_over_energy_derivative(s, params) / p_mag;
}

double s2_weight(double p_mag, double u, const PhysicalParams& params) {
  return s1_weight(p_mag, u, params);
}

double gamma_max_s1(double p_mag, const PhysicalParams& params) {
  if (!(p_mag > 0.0)) throw std::domain_error("gamma_max_s1: p_mag must be > 0");
  const double k1 = params.kappa1, k2 = params.kappa2;
  const double denom = k2 * p_mag * p_mag + 2.0 * std::sqrt(k2) * energy(p_mag, params);
  return 0.5 * k1 / denom;
}

}  // namespace bosekin
