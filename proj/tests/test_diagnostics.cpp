#include <cmath>

#include "bosekin/diagnostics.hpp"
#include "doctest.h"

using namespace bosekin;

namespace {

PhysicalParams default_params() { return make_params(0.5, 1.0, 0.5); }

CollisionConfig fast_config() { return {}; }

DistributionState gaussian_state(std::shared_ptr<const RadialGrid> grid, double amp,
                                 double center, double width) {
  std::vector<double> v(grid->nodes.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const double z = (grid->nodes[i] - center) / width;
    v[i] = amp * std::exp(-z * z);
  }
  return DistributionState(std::move(grid), std::move(v));
}

TrajectoryRecord short_gaussian_run(const CollisionOperator& op) {
  StepControls controls;
  controls.t_end = 0.5;
  controls.record_every = 0.05;
  controls.h_max = 0.02;
  return evolve(gaussian_state(op.grid_ptr(), 1.0, 1.5, 0.5), controls, op);
}

}  // namespace

TEST_CASE("conservation audit") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());

  const TrajectoryRecord traj = short_gaussian_run(op);
  REQUIRE(!traj.aborted);
  const ConservationReport report = conservation_audit(traj);
  CHECK(report.max_energy_drift_rel < 1e-4);
  CHECK(report.max_mass_c22_rel < 1e-6);
  CHECK(report.momentum_drift == 0.0);

  // Audits are pure: re-running yields identical output.
  const ConservationReport again = conservation_audit(traj);
  CHECK(again.max_energy_drift_rel == report.max_energy_drift_rel);
  CHECK(again.max_mass_c22_rel == report.max_mass_c22_rel);
}

TEST_CASE("h-theorem audit") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());

  SUBCASE("equilibrium: nothing to flag") {
    StepControls controls;
    controls.t_end = 0.3;
    controls.record_every = 0.05;
    const TrajectoryRecord traj = evolve(bose_einstein(1.0, grid, params), controls, op);
    const HTheoremReport report = h_theorem_audit(traj);
    CHECK(report.violations == 0);
    CHECK(std::abs(report.max_dissipation) < 1e-6);
  }

  SUBCASE("gaussian run dissipates, and the dissipation shrinks") {
    const TrajectoryRecord traj = short_gaussian_run(op);
    const HTheoremReport report = h_theorem_audit(traj);
    CHECK(report.violations == 0);
    CHECK(report.max_dissipation <= 1e-9);
    CHECK(std::abs(traj.rows.back().dissipation) < std::abs(traj.rows.front().dissipation));
  }
}

TEST_CASE("relaxation audit") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());

  SUBCASE("starting at the fixed point stays there") {
    StepControls controls;
    controls.t_end = 0.3;
    controls.record_every = 0.05;
    const DistributionState f = bose_einstein(1.0, grid, params);
    const TrajectoryRecord traj = evolve(f, controls, op);
    const RelaxationReport report = relaxation_audit(traj, params);
    CHECK(report.fitted_c == doctest::Approx(1.0).epsilon(1e-4));
    for (double d : report.distance) CHECK(d <= 1e-3 * l1_norm_momentum(f, 0.0));
  }

  SUBCASE("gaussian data moves toward equilibrium") {
    const TrajectoryRecord traj = short_gaussian_run(op);
    const RelaxationReport report = relaxation_audit(traj, params);
    CHECK(report.final_below_initial);
  }
}

TEST_CASE("mass growth fit") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());

  SUBCASE("condensate exchange on: bounded exponential envelope") {
    const TrajectoryRecord traj = short_gaussian_run(op);
    const MassGrowthFit fit = mass_growth_fit(traj);
    CHECK(fit.certified);
    CHECK(fit.c_hat >= 0.0);
    CHECK(std::isfinite(fit.c_hat));
  }

  SUBCASE("no condensate: mass constant") {
    const PhysicalParams p22 = make_params(0.5, 1.0, 0.0);  // n_c = 0 turns c12 off
    const CollisionOperator op22(grid, p22, fast_config());
    StepControls controls;
    controls.t_end = 0.5;
    controls.record_every = 0.05;
    const TrajectoryRecord traj =
        evolve(gaussian_state(grid, 0.8, 1.5, 0.5), controls, op22);
    REQUIRE(!traj.aborted);
    const double m0 = traj.rows.front().mass;
    for (const TrajectoryPoint& row : traj.rows) {
      CHECK(std::abs(row.mass - m0) <= 1e-10 * m0);
    }
    const MassGrowthFit fit = mass_growth_fit(traj);
    CHECK(fit.certified);
  }
}

TEST_CASE("moment cap audit") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  const TrajectoryRecord traj = short_gaussian_run(op);
  for (int order : {3, 7}) {
    const MomentCapFit fit = moment_cap_audit(traj, order);
    CHECK(fit.bounded);
    CHECK(fit.max_ratio <= 10.0);
  }
}

TEST_CASE("pair sampler determinism and positivity") {
  auto grid = make_radial_grid(8, 8, 8.0);
  PairSampler a(grid, 42), b(grid, 42);
  for (int i = 0; i < 3; ++i) {
    const DistributionState fa = a.next_state();
    const DistributionState fb = b.next_state();
    for (int j = 0; j < fa.size(); ++j) {
      CHECK(fa.values[j] == fb.values[j]);
      CHECK(fa.values[j] >= 0.0);
    }
  }
}

TEST_CASE("continuity probes stay finite") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());

  for (CollisionChannel which :
       {CollisionChannel::C12, CollisionChannel::C221, CollisionChannel::C222}) {
    const ProbeResult probe = holder_probe(op, which, 2, 10, 4242);
    CHECK(probe.samples == 10);
    CHECK(std::isfinite(probe.max_ratio));
    CHECK(probe.max_ratio > 0.0);
  }

  const ProbeResult lip = one_sided_lipschitz_probe(op, 2, 10, 777);
  CHECK(lip.samples == 10);
  CHECK(std::isfinite(lip.max_ratio));

  SUBCASE("scaled pairs keep the ratio finite") {
    PairSampler sampler(grid, 99);
    const DistributionState f = sampler.next_state();
    for (double eps : {1e-6, 1e-3, 1e-1}) {
      std::vector<double> v(f.values);
      for (double& x : v) x *= (1.0 + eps);
      const DistributionState g(grid, v);
      const std::vector<double> cf = op.c12_apply(f);
      const std::vector<double> cg = op.c12_apply(g);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < grid->size(); ++i) {
        const double u = grid->nodes[i];
        const double w = grid->weights[i] * u * u;
        num += w * std::abs(cf[i] - cg[i]) * std::pow(u, 2);
        den += w * std::abs(f.values[i] - g.values[i]) * (std::pow(u, 5) + 1.0);
      }
      CHECK(std::isfinite(num / den));
    }
  }
}
