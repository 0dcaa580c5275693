#include <cmath>
#include <memory>

#include "bosekin/collision.hpp"
#include "bosekin/diagnostics.hpp"
#include "doctest.h"

using namespace bosekin;

namespace {

PhysicalParams default_params() { return make_params(0.5, 1.0, 0.5); }

CollisionConfig fast_config() { return {}; }

std::vector<double> node_energies(const CollisionOperator& op) {
  std::vector<double> e(op.grid().size());
  for (int i = 0; i < op.grid().size(); ++i) {
    e[i] = energy(op.grid().nodes[i], op.params());
  }
  return e;
}

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

TEST_CASE("vacuum state produces no rates but a spontaneous loss channel") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  const CollisionRates rates = op.apply(zero_state(grid));
  for (int i = 0; i < grid->size(); ++i) {
    CHECK(rates.c12[i] == 0.0);
    CHECK(rates.c22[i] == 0.0);
    CHECK(rates.q[i] == 0.0);
    CHECK(rates.c12_gain[i] == 0.0);
    // The spontaneous "+1" term survives in the loss frequency.
    CHECK(rates.c12_minus[i] > 0.0);
    CHECK(rates.q_minus[i] >= 0.0);
  }
}

TEST_CASE("gain/loss recombination and positivity on random states") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  PairSampler sampler(grid, 71);
  for (int trial = 0; trial < 20; ++trial) {
    const DistributionState f = sampler.next_state();
    const CollisionRates r = op.apply(f);
    for (int i = 0; i < grid->size(); ++i) {
      CHECK(r.c12_gain[i] >= 0.0);
      CHECK(r.c12_minus[i] >= 0.0);
      CHECK(r.c22_gain[i] >= 0.0);
      CHECK(r.c22_minus[i] >= 0.0);
      const double recombined12 = r.c12_gain[i] - f.values[i] * r.c12_minus[i];
      const double recombined22 = r.c22_gain[i] - f.values[i] * r.c22_minus[i];
      const double scale12 = std::max(std::abs(r.c12_gain[i]), 1e-30);
      const double scale22 = std::max(std::abs(r.c22_gain[i]), 1e-30);
      CHECK(std::abs(recombined12 - r.c12[i]) <= 1e-10 * scale12);
      CHECK(std::abs(recombined22 - r.c22[i]) <= 1e-10 * scale22);
      CHECK(r.q[i] == r.c12[i] + r.c22[i]);
      CHECK(r.q_minus[i] == r.c12_minus[i] + r.c22_minus[i]);
    }
  }
}

TEST_CASE("binary operator splits into second- and third-order parts") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  PairSampler sampler(grid, 72);
  const DistributionState f = sampler.next_state();
  const std::vector<double> full = op.c22_apply(f);
  const std::vector<double> part1 = op.c221_apply(f);
  const std::vector<double> part2 = op.c222_apply(f);
  for (int i = 0; i < grid->size(); ++i) {
    const double scale = std::max({std::abs(full[i]), std::abs(part1[i]), 1e-30});
    CHECK(std::abs(part1[i] + part2[i] - full[i]) <= 1e-10 * scale);
  }
}

TEST_CASE("detailed balance at equilibrium") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  const DistributionState f = bose_einstein(1.0, grid, params);
  const CollisionRates r = op.apply(f);

  std::vector<double> ones(grid->size(), 1.0);
  std::vector<double> abs_q(grid->size()), gain(grid->size());
  for (int i = 0; i < grid->size(); ++i) {
    abs_q[i] = std::abs(r.q[i]);
    gain[i] = r.c12_gain[i] + r.c22_gain[i];
  }
  const double residual = op.weak_form(abs_q, ones);
  const double scale = op.weak_form(gain, ones);
  REQUIRE(scale > 0.0);
  CHECK(residual / scale < 1e-3);

  // One refinement step at least halves the equilibrium residual.
  auto fine = make_radial_grid(16, 8, 8.0);
  const CollisionOperator op2(fine, params, fast_config());
  const DistributionState f2 = bose_einstein(1.0, fine, params);
  const CollisionRates r2 = op2.apply(f2);
  std::vector<double> ones2(fine->size(), 1.0);
  std::vector<double> abs_q2(fine->size()), gain2(fine->size());
  for (int i = 0; i < fine->size(); ++i) {
    abs_q2[i] = std::abs(r2.q[i]);
    gain2[i] = r2.c12_gain[i] + r2.c22_gain[i];
  }
  CHECK(op2.weak_form(abs_q2, ones2) / op2.weak_form(gain2, ones2) <
        0.5 * residual / scale);
}

TEST_CASE("conservation weak forms on random states") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  const std::vector<double> e = node_energies(op);
  std::vector<double> ones(grid->size(), 1.0);

  PairSampler sampler(grid, 73);
  for (int trial = 0; trial < 10; ++trial) {
    const DistributionState f = sampler.next_state();
    const CollisionRates r = op.apply(f);

    // Energy production of the full operator vanishes up to quadrature error.
    std::vector<double> abs_q(grid->size());
    for (int i = 0; i < grid->size(); ++i) abs_q[i] = std::abs(r.q[i]);
    const double e_scale = op.weak_form(abs_q, e);
    CHECK(std::abs(op.weak_form(r.q, e)) <= 1e-5 * std::max(e_scale, 1e-30));

    // Mass neutrality of the binary channel.
    std::vector<double> loss(grid->size());
    for (int i = 0; i < grid->size(); ++i) loss[i] = f.values[i] * r.c22_minus[i];
    const double m_scale =
        std::max({op.weak_form(r.c22_gain, ones), op.weak_form(loss, ones), 1e-30});
    CHECK(std::abs(op.weak_form(r.c22, ones)) <= 1e-6 * m_scale);
  }
}

TEST_CASE("entropy production is nonnegative") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  PairSampler sampler(grid, 74);
  for (int trial = 0; trial < 10; ++trial) {
    const DistributionState f = sampler.next_state();
    std::vector<double> phi(grid->size());
    for (int i = 0; i < grid->size(); ++i) {
      const double v = std::max(f.values[i], 1e-300);
      phi[i] = std::log(v / (1.0 + v));
    }
    const double dissipation = op.weak_form(f, phi, CollisionChannel::Q);
    CHECK(dissipation <= 1e-9);
  }
}

TEST_CASE("binary channel dies below the cutoff") {
  // Cutoff above the grid cap: the whole grid is excluded.
  const PhysicalParams params = make_params(0.5, 4.0, 4.0);  // p0 = 16
  auto grid = make_radial_grid(6, 6, 8.0);
  REQUIRE(params.p0 > grid->u_max);
  const CollisionOperator op(grid, params, fast_config());
  PairSampler sampler(grid, 75);
  const DistributionState f = sampler.next_state();
  for (double v : op.c22_apply(f)) CHECK(v == 0.0);
}

TEST_CASE("state on a foreign grid is rejected") {
  const PhysicalParams params = default_params();
  auto grid = make_radial_grid(8, 8, 8.0);
  auto other = make_radial_grid(8, 8, 8.0);
  const CollisionOperator op(grid, params, fast_config());
  CHECK_THROWS(op.apply(zero_state(other)));
}
