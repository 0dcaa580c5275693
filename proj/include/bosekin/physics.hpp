#pragma once

#include <optional>

namespace bosekin {

/// Physical constants in reduced units (hbar = 1). kappa1, kappa2 and p0 are
/// derived from (m, g, n_c) at construction unless explicitly overridden;
/// everything downstream reads only the resolved values.
struct PhysicalParams {
  double m = 0.5;         // particle mass, > 0
  double g = 1.0;         // interaction coupling, >= 0
  double n_c = 0.5;       // condensate density, >= 0
  double lambda1 = 0.0;   // condensate-exchange prefactor, 2 g^2 / (2 pi)^2
  double lambda2 = 0.0;   // binary-collision prefactor, 2 g^2 / (2 pi)^5
  double kappa3 = 1.0;    // radial binary-collision prefactor
  double kappa1 = 0.0;    // g n_c / m
  double kappa2 = 0.0;    // 1 / (4 m^2)
  double p0 = 0.0;        // 2 m n_c g, dispersion crossover; k22 cuts off below it
  double gamma_cap = 0.0; // measured sup of k22 on the resonant slice (diagnostic)
  double u_floor = 1e-10; // momentum clamp for the Bogoliubov coefficients
};

/// Builds a fully resolved parameter set. Negative lambda defaults are filled
/// from g; kappa overrides exist for synthetic geometry configurations only.
PhysicalParams make_params(double m, double g, double n_c,
                           std::optional<double> lambda1 = std::nullopt,
                           std::optional<double> lambda2 = std::nullopt,
                           double kappa3 = 1.0,
                           std::optional<double> kappa1_override = std::nullopt,
                           std::optional<double> kappa2_override = std::nullopt,
                           double u_floor = 1e-10);

/// Quasiparticle energy E(u) = sqrt(kappa1 u^2 + kappa2 u^4).
/// Strictly increasing in u; E(0) = 0. Domain error on negative or
/// non-finite input.
double energy(double u, const PhysicalParams& params);

/// dE/du = (kappa1 + 2 kappa2 u^2) / sqrt(kappa1 + kappa2 u^2).
/// At kappa1 = 0 the formula degenerates at u = 0; the one-sided limit 0 is
/// returned there.
double energy_derivative(double u, const PhysicalParams& params);

/// Inverse of `energy` on [0, inf): u with E(u) = e.
/// Unresolvable (error) when kappa1 = kappa2 = 0.
double inverse_energy(double e, const PhysicalParams& params);

/// u / E'(u), continuous down to u = 0 in both dispersion regimes.
/// This is the Jacobian factor of every energy-delta resolution.
double momentum_over_energy_derivative(double u, const PhysicalParams& params);

struct BogoliubovUV {
  double u = 1.0;
  double v = 0.0;
};

/// Bogoliubov coefficients at momentum magnitude u > 0:
/// u_p^2 = (u^2/2m + g n_c + E(u)) / (2 E(u)), u_p^2 - v_p^2 = 1.
/// Singular at u = 0 (error); kernel evaluation clamps at u_floor instead.
BogoliubovUV bogoliubov_uv(double u, const PhysicalParams& params);

/// |A12|^2 built from the Bogoliubov coefficients of the three momenta.
/// Symmetric in the last two arguments; equals 4 in the free limit g n_c = 0.
/// Arguments are clamped at u_floor before coefficient evaluation.
double k12(double u1, double u2, double u3, const PhysicalParams& params);

/// |A22|^2 times the indicator of {all arguments >= p0}. Equals 1 in the
/// free limit (above the cutoff); bounded by the measured gamma_cap.
double k22(double u1, double u2, double u3, double u4, const PhysicalParams& params);

/// Dense scan of k22 over the energy-resonant slice of [p0, 20 p0]^3 with the
/// fourth momentum resolved; returns the observed supremum. Diagnostic only.
double measure_gamma_cap(const PhysicalParams& params, int samples_per_axis = 48);

}  // namespace bosekin
