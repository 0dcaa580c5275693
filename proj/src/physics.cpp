#include "bosekin/physics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bosekin {

namespace {

void require_finite_nonneg(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error(std::string(what) + " must be finite and >= 0, got " +
                            std::to_string(x));
  }
}

}  // namespace

PhysicalParams make_params(double m, double g, double n_c,
                           std::optional<double> lambda1,
                           std::optional<double> lambda2, double kappa3,
                           std::optional<double> kappa1_override,
                           std::optional<double> kappa2_override, double u_floor) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw std::domain_error("particle mass must be positive and finite");
  }
  require_finite_nonneg(g, "coupling g");
  require_finite_nonneg(n_c, "condensate density n_c");
  require_finite_nonneg(kappa3, "kappa3");

  PhysicalParams p;
  p.m = m;
  p.g = g;
  p.n_c = n_c;
  const double two_pi = 2.0 * std::numbers::pi;
  p.lambda1 = lambda1.value_or(2.0 * g * g / (two_pi * two_pi));
  p.lambda2 = lambda2.value_or(2.0 * g * g / std::pow(two_pi, 5));
  p.kappa3 = kappa3;
  p.kappa1 = kappa1_override.value_or(g * n_c / m);
  p.kappa2 = kappa2_override.value_or(1.0 / (4.0 * m * m));
  p.p0 = 2.0 * m * n_c * g;
  p.u_floor = u_floor;
  require_finite_nonneg(p.lambda1, "lambda1");
  require_finite_nonneg(p.lambda2, "lambda2");
  require_finite_nonneg(p.kappa1, "kappa1");
  require_finite_nonneg(p.kappa2, "kappa2");
  return p;
}

double energy(double u, const PhysicalParams& params) {
  if (!std::isfinite(u) || u < 0.0) {
    throw std::domain_error("energy: momentum magnitude must be finite and >= 0");
  }
  // u * sqrt(k1 + k2 u^2) keeps full precision toward u = 0.
  return u * std::sqrt(params.kappa1 + params.kappa2 * u * u);
}

double energy_derivative(double u, const PhysicalParams& params) {
  if (!std::isfinite(u) || u < 0.0) {
    throw std::domain_error("energy_derivative: momentum magnitude must be finite and >= 0");
  }
  const double s = params.kappa1 + params.kappa2 * u * u;
  if (s <= 0.0) {
    return 0.0;  // kappa1 = 0 degenerate point: E = sqrt(k2) u^2, E'(0) = 0
  }
  return (params.kappa1 + 2.0 * params.kappa2 * u * u) / std::sqrt(s);
}

double inverse_energy(double e, const PhysicalParams& params) {
  if (!std::isfinite(e) || e < 0.0) {
    throw std::domain_error("inverse_energy: energy must be finite and >= 0");
  }
  const double k1 = params.kappa1, k2 = params.kappa2;
  if (k2 > 0.0) {
    // u^2 = 2 e^2 / (k1 + sqrt(k1^2 + 4 k2 e^2)), stable for k2 e^2 << k1^2.
    const double denom = k1 + std::sqrt(k1 * k1 + 4.0 * k2 * e * e);
    return (denom > 0.0) ? e * std::sqrt(2.0 / denom) : 0.0;
  }
  if (k1 > 0.0) {
    return e / std::sqrt(k1);
  }
  throw std::domain_error("inverse_energy: kappa1 = kappa2 = 0 is unresolvable");
}

double momentum_over_energy_derivative(double u, const PhysicalParams& params) {
  const double k1 = params.kappa1, k2 = params.kappa2;
  if (k1 <= 0.0) {
    // E'(u) = 2 sqrt(k2) u exactly, so the ratio is constant.
    return 1.0 / (2.0 * std::sqrt(k2));
  }
  return u * std::sqrt(k1 + k2 * u * u) / (k1 + 2.0 * k2 * u * u);
}

BogoliubovUV bogoliubov_uv(double u, const PhysicalParams& params) {
  if (!std::isfinite(u) || u <= 0.0) {
    throw std::domain_error("bogoliubov_uv: requires momentum magnitude > 0");
  }
  const double e = energy(u, params);
  if (!(e > 0.0)) {
    throw std::domain_error("bogoliubov_uv: vanishing quasiparticle energy");
  }
  const double kinetic = u * u / (2.0 * params.m);
  const double up2 = std::max(1.0, (kinetic + params.g * params.n_c + e) / (2.0 * e));
  BogoliubovUV uv;
  uv.u = std::sqrt(up2);
  uv.v = std::sqrt(up2 - 1.0);
  return uv;
}

double k12(double u1, double u2, double u3, const PhysicalParams& params) {
  const double f = params.u_floor;
  const BogoliubovUV a = bogoliubov_uv(std::max(u1, f), params);
  const BogoliubovUV b = bogoliubov_uv(std::max(u2, f), params);
  const BogoliubovUV c = bogoliubov_uv(std::max(u3, f), params);
  // u_p - v_p = 1 / (u_p + v_p), exact by the hyperbolic normalization;
  // avoids cancellation where both coefficients are large.
  const double da = 1.0 / (a.u + a.v);
  const double db = 1.0 / (b.u + b.v);
  const double dc = 1.0 / (c.u + c.v);
  const double amp = dc * (a.u * b.u + a.v * b.v) + db * (a.u * c.u + a.v * c.v) -
                     da * (b.u * c.v + b.v * c.u);
  return amp * amp;
}

double k22(double u1, double u2, double u3, double u4, const PhysicalParams& params) {
  if (!std::isfinite(u1) || !std::isfinite(u2) || !std::isfinite(u3) || !std::isfinite(u4)) {
    throw std::domain_error("k22: non-finite momentum magnitude");
  }
  if (u1 < params.p0 || u2 < params.p0 || u3 < params.p0 || u4 < params.p0) {
    return 0.0;
  }
  const double f = params.u_floor;
  const BogoliubovUV a = bogoliubov_uv(std::max(u1, f), params);
  const BogoliubovUV b = bogoliubov_uv(std::max(u2, f), params);
  const BogoliubovUV c = bogoliubov_uv(std::max(u3, f), params);
  const BogoliubovUV d = bogoliubov_uv(std::max(u4, f), params);
  const double amp = a.u * b.u * c.u * d.u + a.u * b.v * c.u * d.v +
                     a.u * b.v * c.v * d.u + a.v * b.u * c.u * d.v +
                     a.v * b.u * c.v * d.u + a.v * b.v * c.v * d.v;
  return amp * amp;
}

double measure_gamma_cap(const PhysicalParams& params, int samples_per_axis) {
  const double lo = params.p0;
  const double hi = (params.p0 > 0.0) ? 20.0 * params.p0 : 10.0;
  const int n = std::max(2, samples_per_axis);
  const double step = (hi - lo) / (n - 1);
  double cap = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * step;
    const double ea = energy(a, params);
    for (int j = 0; j < n; ++j) {
      const double b = lo + j * step;
      const double eab = ea + energy(b, params);
      for (int k = 0; k < n; ++k) {
        const double c = lo + k * step;
        const double e4 = eab - energy(c, params);
        if (e4 < 0.0) continue;
        const double d = inverse_energy(e4, params);
        if (d < params.p0) continue;
        cap = std::max(cap, k22(a, b, c, d, params));
      }
    }
  }
  return cap;
}

}  // namespace bosekin
