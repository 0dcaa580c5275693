#include <cmath>

#include "bosekin/integrator.hpp"
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

}  // namespace

TEST_CASE("positivity step bound") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());

  SUBCASE("no loss -> unbounded step") {
    CollisionRates r;
    r.q_minus.assign(grid->size(), 0.0);
    CHECK(std::isinf(positivity_step_bound(r)));
  }

  SUBCASE("theta-fraction of the bound keeps every node nonnegative") {
    const DistributionState f = gaussian_state(grid, 1.0, 1.5, 0.5);
    const CollisionRates r = op.apply(f);
    const double h = 0.5 * positivity_step_bound(r);
    for (int i = 0; i < grid->size(); ++i) {
      CHECK(f.values[i] + h * r.q[i] >= -1e-15);
    }
  }
}

TEST_CASE("single step") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  StepControls controls;
  controls.h_max = 0.01;

  SUBCASE("zero rate leaves the state unchanged") {
    const DistributionState z = zero_state(grid);
    CollisionRates r = op.apply(z);
    const StepResult res = step(z, r, controls, op);
    for (int i = 0; i < grid->size(); ++i) CHECK(res.state.values[i] == 0.0);
    CHECK(res.clamped == 0.0);
  }

  SUBCASE("near-equilibrium step barely moves") {
    const DistributionState f = bose_einstein(1.0, grid, params);
    const CollisionRates r = op.apply(f);
    const StepResult res = step(f, r, controls, op);
    CHECK(l1_distance(res.state, f) <= res.h_used * 1e-2 * l1_norm_momentum(f, 0.0));
  }

  SUBCASE("energy change of one step is quadrature-limited") {
    const DistributionState f = gaussian_state(grid, 1.0, 1.5, 0.5);
    const CollisionRates r = op.apply(f);
    const StepResult res = step(f, r, controls, op);
    const double before = moment(f, params, 1.0);
    const double after = moment(res.state, params, 1.0);
    CHECK(std::abs(after - before) <= 1e-4 * res.h_used * before);
  }
}

TEST_CASE("evolution diagnostics") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  StepControls controls;
  controls.t_end = 0.5;
  controls.record_every = 0.1;
  controls.h_max = 0.02;

  SUBCASE("equilibrium is a fixed point") {
    const DistributionState f = bose_einstein(1.0, grid, params);
    const TrajectoryRecord traj = evolve(f, controls, op);
    REQUIRE(!traj.aborted);
    REQUIRE(traj.rows.size() >= 5);
    const TrajectoryPoint& first = traj.rows.front();
    for (const TrajectoryPoint& row : traj.rows) {
      CHECK(std::abs(row.mass - first.mass) <= 1e-3 * first.mass);
      CHECK(std::abs(row.energy - first.energy) <= 1e-6 * first.energy);
      CHECK(std::abs(row.entropy - first.entropy) <= 1e-3 * std::abs(first.entropy));
      CHECK(row.min_f >= 0.0);
    }
  }

  SUBCASE("gaussian data: positivity, monotone entropy, recorded times") {
    const DistributionState f0 = gaussian_state(grid, 1.0, 1.5, 0.5);
    const TrajectoryRecord traj = evolve(f0, controls, op);
    REQUIRE(!traj.aborted);
    double prev_t = -1.0;
    for (size_t i = 0; i < traj.rows.size(); ++i) {
      CHECK(traj.rows[i].t > prev_t);
      prev_t = traj.rows[i].t;
      CHECK(traj.rows[i].min_f >= 0.0);
      if (i > 0) CHECK(traj.rows[i].entropy <= traj.rows[i - 1].entropy + 1e-8);
    }
    CHECK(traj.rows.back().t == doctest::Approx(controls.t_end).epsilon(1e-10));
    CHECK(traj.clamped_total <= 1e-12);
    CHECK(traj.snapshots.size() == traj.rows.size());
  }

  SUBCASE("conservation fix pins the energy to round-off") {
    StepControls fixed = controls;
    fixed.conservation_fix = true;
    const DistributionState f0 = gaussian_state(grid, 1.0, 1.5, 0.5);
    const TrajectoryRecord traj = evolve(f0, fixed, op);
    REQUIRE(!traj.aborted);
    const double e0 = traj.rows.front().energy;
    for (const TrajectoryPoint& row : traj.rows) {
      CHECK(std::abs(row.energy - e0) <= 1e-12 * e0);
    }
  }
}

TEST_CASE("temporal order of the scheme") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());

  const DistributionState f0 = gaussian_state(grid, 1.0, 1.5, 0.5);
  const OrderCheckResult res = richardson_order_check(f0, op, 0.02, 0.2);
  REQUIRE(res.defined);
  CHECK(res.observed_order > 0.8);
  CHECK(res.observed_order < 1.2);

  // Equilibrium data: differences sit at round-off, order undefined.
  const DistributionState eq = bose_einstein(1.0, grid, params);
  const OrderCheckResult eq_res = richardson_order_check(eq, op, 0.02, 0.2);
  CHECK(!eq_res.defined);
}

TEST_CASE("halving the step halves the Euler error") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  const DistributionState f0 = gaussian_state(grid, 1.0, 1.5, 0.5);
  const OrderCheckResult res = richardson_order_check(f0, op, 0.02, 0.2);
  REQUIRE(res.defined);
  CHECK(res.err_coarse / res.err_fine == doctest::Approx(2.0).epsilon(0.35));
}
