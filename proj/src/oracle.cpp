#include "bosekin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bosekin/manifolds.hpp"
#include "bosekin/threading.hpp"

namespace bosekin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gauss_delta(double x, double eps) {
  const double z = x / eps;
  return std::exp(-0.5 * z * z) / (eps * std::sqrt(kTwoPi));
}

struct Window {
  double lo = 0.0, hi = 0.0;
  bool empty = true;
};

// Range of the partner magnitude where |e_partner - target| <= n_sigma eps.
Window partner_window(double target, double eps, double n_sigma,
                      const PhysicalParams& params) {
  Window w;
  const double band = n_sigma * eps;
  if (target + band <= 0.0) return w;
  w.lo = inverse_energy(std::max(target - band, 0.0), params);
  w.hi = inverse_energy(target + band, params);
  w.empty = !(w.hi > w.lo);
  return w;
}

// mu-interval on [-1, 1] where the partner magnitude lies in [r_lo, r_hi].
// sign = -1: r = |p - x|, r^2 = p^2 + u^2 - 2 p u mu;
// sign = +1: r = |p + x|, r^2 = p^2 + u^2 + 2 p u mu.
Window mu_window(double p, double u, double r_lo, double r_hi, int sign) {
  auto mu_of = [&](double r) {
    const double base = (p * p + u * u - r * r) / (2.0 * p * u);
    return sign < 0 ? base : -base;
  };
  Window w;
  double a = mu_of(r_hi), b = mu_of(r_lo);
  if (a > b) std::swap(a, b);
  w.lo = std::max(a, -1.0);
  w.hi = std::min(b, 1.0);
  w.empty = !(w.hi > w.lo);
  return w;
}

template <typename F>
double integrate_panels(double a, double b, int panels, int nodes, F&& f) {
  if (!(b > a)) return 0.0;
  const GaussRule& rule = gauss_legendre(nodes);
  double total = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double acc = 0.0;
    for (int q = 0; q < nodes; ++q) {
      acc += rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
    }
    total += acc * 0.5 * h;
  }
  return total;
}

}  // namespace

double surface_area_reference(double p_mag, SurfaceFamily family,
                              const std::function<double(double)>& F, double eps,
                              const PhysicalParams& params, double u_hi,
                              const OracleSpec& spec) {
  if (!(eps > 0.0)) throw std::domain_error("surface_area_reference: eps must be > 0");
  const double e_p = energy(p_mag, params);
  const double band = spec.n_sigma * eps;

  double outer_hi = u_hi;
  if (family == SurfaceFamily::S0) {
    // |x| on the splitting surface stays below p; eps smears slightly past it.
    outer_hi = std::min(u_hi, inverse_energy(e_p + band, params));
  }

  auto column = [&](double u) -> double {
    const double e_u = energy(u, params);
    double target = 0.0;
    int sign = 0;
    switch (family) {
      case SurfaceFamily::S0:  // E(|p-x|) = E(p) - E(|x|)
        target = e_p - e_u;
        sign = -1;
        break;
      case SurfaceFamily::S1:  // E(|p+x|) = E(p) + E(|x|)
        target = e_p + e_u;
        sign = +1;
        break;
      case SurfaceFamily::S2:  // E(|x-p|) = E(|x|) - E(p)
        target = e_u - e_p;
        sign = -1;
        break;
    }
    const Window pw = partner_window(target, eps, spec.n_sigma, params);
    if (pw.empty) return 0.0;
    const Window mw = mu_window(p_mag, u, pw.lo, pw.hi, sign);
    if (mw.empty) return 0.0;
    return integrate_panels(mw.lo, mw.hi, spec.window_panels, spec.window_nodes,
                            [&](double mu) {
                              const double r2 =
                                  p_mag * p_mag + u * u + 2.0 * sign * p_mag * u * mu;
                              const double r = std::sqrt(std::max(r2, 0.0));
                              double h;
                              if (family == SurfaceFamily::S0) {
                                h = energy(r, params) + e_u - e_p;
                              } else if (family == SurfaceFamily::S1) {
                                h = energy(r, params) - e_p - e_u;
                              } else {
                                h = e_u - e_p - energy(r, params);
                              }
                              return gauss_delta(h, eps);
                            });
  };

  return integrate_panels(0.0, outer_hi, spec.outer_panels, spec.outer_nodes,
                          [&](double u) { return kTwoPi * u * u * F(u) * column(u); });
}

double c12_reference(const DistributionState& state, double p1, double eps,
                     const PhysicalParams& params, const OracleSpec& spec) {
  if (!(eps > 0.0)) throw std::domain_error("c12_reference: eps must be > 0");
  const double lam = params.lambda1 * params.n_c;
  if (lam == 0.0) return 0.0;
  const EnergyInterpolant interp(state, params);
  const double e1 = energy(p1, params);
  const double f1 = interp.at_momentum(p1);
  const double u_max = state.grid->u_max;
  const double band = spec.n_sigma * eps;

  // Splitting channel: p3 = p1 - p2 resolved, energy delta smoothed.
  auto split_column = [&](double p2) -> double {
    const double e2 = energy(p2, params);
    const Window pw = partner_window(e1 - e2, eps, spec.n_sigma, params);
    if (pw.empty) return 0.0;
    const Window mw = mu_window(p1, p2, pw.lo, pw.hi, -1);
    if (mw.empty) return 0.0;
    const double f2 = interp.at_energy(e2);
    return integrate_panels(mw.lo, mw.hi, spec.window_panels, spec.window_nodes,
                            [&](double mu) {
                              const double r =
                                  std::sqrt(std::max(p1 * p1 + p2 * p2 - 2.0 * p1 * p2 * mu, 0.0));
                              const double e3 = energy(r, params);
                              const double f3 = interp.at_energy(e3);
                              return k12(p1, p2, r, params) * gauss_delta(e1 - e2 - e3, eps) *
                                     (f2 * f3 - f1 * (f2 + f3 + 1.0));
                            });
  };

  // Merging channel: p3 = p2 - p1 resolved; p2 reaches past the grid cap up
  // to where the resonance with in-support p3 can still fire.
  const double p2_hi = inverse_energy(e1 + energy(u_max, params) + band, params);
  auto merge_column = [&](double p2) -> double {
    const double e2 = energy(p2, params);
    const Window pw = partner_window(e2 - e1, eps, spec.n_sigma, params);
    if (pw.empty) return 0.0;
    const Window mw = mu_window(p1, p2, pw.lo, pw.hi, -1);
    if (mw.empty) return 0.0;
    const double f2 = interp.at_energy(e2);
    return integrate_panels(mw.lo, mw.hi, spec.window_panels, spec.window_nodes,
                            [&](double mu) {
                              const double r =
                                  std::sqrt(std::max(p1 * p1 + p2 * p2 - 2.0 * p1 * p2 * mu, 0.0));
                              const double e3 = energy(r, params);
                              const double f3 = interp.at_energy(e3);
                              return k12(p2, p1, r, params) * gauss_delta(e2 - e1 - e3, eps) *
                                     (f2 * (f1 + f3 + 1.0) - f1 * f3);
                            });
  };

  const double split = integrate_panels(
      0.0, std::min(u_max, inverse_energy(e1 + band, params)), spec.outer_panels,
      spec.outer_nodes, [&](double p2) { return kTwoPi * p2 * p2 * split_column(p2); });
  const double merge =
      integrate_panels(0.0, p2_hi, spec.outer_panels, spec.outer_nodes,
                       [&](double p2) { return kTwoPi * p2 * p2 * merge_column(p2); });
  return lam * (split + 2.0 * merge);
}

double c22_reference(const DistributionState& state, double p1, double eps,
                     const PhysicalParams& params, const OracleSpec& spec) {
  if (!(eps > 0.0)) throw std::domain_error("c22_reference: eps must be > 0");
  if (params.kappa3 == 0.0) return 0.0;
  const EnergyInterpolant interp(state, params);
  const double e1 = energy(p1, params);
  const double f1 = interp.at_momentum(p1);
  const double u_max = state.grid->u_max;

  auto p4_column = [&](double p2, double p3) -> double {
    const double e2 = energy(p2, params);
    const double e3 = energy(p3, params);
    Window pw = partner_window(e1 + e2 - e3, eps, spec.n_sigma, params);
    if (pw.empty) return 0.0;
    // Momenta beyond the grid ball are excluded on both sides of the check.
    pw.hi = std::min(pw.hi, u_max);
    if (!(pw.hi > pw.lo)) return 0.0;
    const double f2 = interp.at_energy(e2);
    const double f3 = interp.at_energy(e3);
    return integrate_panels(
        pw.lo, pw.hi, spec.window_panels, spec.window_nodes, [&](double p4) {
          const double kern = k22(p1, p2, p3, p4, params);
          if (kern == 0.0) return 0.0;
          const double e4 = energy(p4, params);
          const double f4 = interp.at_energy(e4);
          const double mn = std::min(std::min(p1, p2), std::min(p3, p4));
          return kern * mn * p2 * p3 * p4 / p1 * gauss_delta(e1 + e2 - e3 - e4, eps) *
                 (f3 * f4 * (1.0 + f1 + f2) - f1 * f2 * (1.0 + f3 + f4));
        });
  };

  return params.kappa3 *
         integrate_panels(0.0, u_max, spec.outer_panels, spec.outer_nodes, [&](double p2) {
           return integrate_panels(0.0, u_max, spec.outer_panels, spec.outer_nodes,
                                   [&](double p3) { return p4_column(p2, p3); });
         });
}

ScanRoot q_gamma_reference(double p_mag, double gamma, const PhysicalParams& params,
                           double resolution_rel) {
  const double dq = resolution_rel * p_mag;
  ScanRoot root;
  double prev = h0(p_mag, gamma, 0.0, params);
  for (double q = dq; q <= p_mag + 0.5 * dq; q += dq) {
    const double cur = h0(p_mag, gamma, q, params);
    if (prev < 0.0 && cur >= 0.0) {
      ++root.sign_changes;
      root.q = q - 0.5 * dq;
    } else if (prev >= 0.0 && cur < 0.0) {
      ++root.sign_changes;
    }
    prev = cur;
  }
  if (root.sign_changes != 1) {
    throw std::runtime_error("q_gamma_reference: geometry violation, " +
                             std::to_string(root.sign_changes) + " sign changes");
  }
  return root;
}

EpsExtrapolation extrapolate_eps(const std::function<double(double)>& eval, double eps0) {
  EpsExtrapolation out;
  out.raw = {eval(eps0), eval(0.5 * eps0), eval(0.25 * eps0)};
  const double r1 = (4.0 * out.raw[1] - out.raw[0]) / 3.0;
  const double r2 = (4.0 * out.raw[2] - out.raw[1]) / 3.0;
  out.value = (16.0 * r2 - r1) / 15.0;
  out.residual = std::abs(r2 - r1);
  return out;
}

std::vector<WeightCheck> certify_surface_weights(const PhysicalParams& params,
                                                 const std::vector<double>& p_values,
                                                 double eps0_rel, const OracleSpec& spec) {
  struct TestFn {
    const char* name;
    std::function<double(double)> f;
  };
  const std::vector<TestFn> integrands = {
      {"gauss", [](double u) { return std::exp(-u * u); }},
      {"u-gauss", [](double u) { return u * std::exp(-0.7 * u * u); }},
  };

  std::vector<WeightCheck> checks;
  for (double p : p_values) {
    const double e_p = energy(p, params);
    const double eps0 = eps0_rel * std::max(e_p, 1.0);
    // Integrand tails below 1e-14 of peak for u > ~6; cap generously.
    const double u_cap = 8.0;
    for (const TestFn& fn : integrands) {
      for (SurfaceFamily family :
           {SurfaceFamily::S0, SurfaceFamily::S1, SurfaceFamily::S2}) {
        WeightCheck check;
        check.p_mag = p;
        check.family = family == SurfaceFamily::S0   ? std::string("S0-") + fn.name
                       : family == SurfaceFamily::S1 ? std::string("S1-") + fn.name
                                                     : std::string("S2-") + fn.name;
        double reduced = 0.0;
        if (family == SurfaceFamily::S0) {
          reduced = integrate_panels(0.0, p, 64, 8, [&](double u) {
            return fn.f(u) * s0_weight(p, u, params);
          });
        } else if (family == SurfaceFamily::S1) {
          reduced = integrate_panels(0.0, u_cap, 64, 8, [&](double u) {
            return fn.f(u) * s1_weight(p, u, params);
          });
        } else {
          reduced = integrate_panels(0.0, u_cap, 64, 8, [&](double u) {
            return fn.f(s1_partner(p, u, params)) * s2_weight(p, u, params);
          });
        }
        const double oracle_hi =
            (family == SurfaceFamily::S0)
                ? p
                : inverse_energy(e_p + energy(u_cap, params) + spec.n_sigma * eps0, params);
        const EpsExtrapolation ext = extrapolate_eps(
            [&](double eps) {
              return surface_area_reference(p, family, fn.f, eps, params, oracle_hi, spec);
            },
            eps0);
        check.reduced = reduced;
        check.reference = ext.value;
        check.extrapolation_residual = ext.residual;
        check.rel_err = std::abs(reduced - ext.value) /
                        std::max({std::abs(ext.value), std::abs(reduced), 1e-300});
        checks.push_back(std::move(check));
      }
    }
  }
  return checks;
}

std::vector<CollisionCheck> certify_collision(const CollisionOperator& op,
                                              const DistributionState& state,
                                              double eps0_rel, const OracleSpec& spec,
                                              int max_nodes) {
  const RadialGrid& grid = op.grid();
  const PhysicalParams& params = op.params();
  const CollisionRates rates = op.apply(state);

  std::vector<int> picks;
  const int n = grid.size();
  const int stride = (max_nodes > 0 && max_nodes < n) ? (n + max_nodes - 1) / max_nodes : 1;
  for (int i = 0; i < n; i += stride) picks.push_back(i);

  std::vector<CollisionCheck> out(2);
  out[0].channel = "c12";
  out[1].channel = "c22";
  for (CollisionCheck& check : out) {
    check.impl.resize(picks.size());
    check.reference.resize(picks.size());
    check.node.resize(picks.size());
  }

  std::vector<double> resid12(picks.size(), 0.0), resid22(picks.size(), 0.0);
  parallel_for(static_cast<int>(picks.size()), op.config().threads, [&](int idx) {
    const int i = picks[idx];
    const double p1 = grid.nodes[i];
    const double eps0 = eps0_rel * std::max(energy(p1, params), 1.0);
    const EpsExtrapolation e12 = extrapolate_eps(
        [&](double eps) { return c12_reference(state, p1, eps, params, spec); }, eps0);
    const EpsExtrapolation e22 = extrapolate_eps(
        [&](double eps) { return c22_reference(state, p1, eps, params, spec); }, eps0);
    out[0].node[idx] = p1;
    out[1].node[idx] = p1;
    out[0].impl[idx] = rates.c12[i];
    out[1].impl[idx] = rates.c22[i];
    out[0].reference[idx] = e12.value;
    out[1].reference[idx] = e22.value;
    resid12[idx] = e12.residual;
    resid22[idx] = e22.residual;
  });

  for (int c = 0; c < 2; ++c) {
    double scale = 0.0, err = 0.0, resid = 0.0;
    for (size_t k = 0; k < picks.size(); ++k) {
      scale = std::max(scale, std::abs(out[c].reference[k]));
      err = std::max(err, std::abs(out[c].impl[k] - out[c].reference[k]));
      resid = std::max(resid, c == 0 ? resid12[k] : resid22[k]);
    }
    out[c].sup_rel_err = scale > 0.0 ? err / scale : 0.0;
    out[c].extrapolation_residual = resid;
  }
  return out;
}

}  // namespace bosekin
