#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bosekin/grid.hpp"
#include "bosekin/physics.hpp"
#include "bosekin/state.hpp"

namespace bosekin {

/// Per-node collision rates and their gain/loss splittings. The recombination
/// identities c12 = c12_gain - f c12_minus (same for c22) and
/// q = c12 + c22, q_minus = c12_minus + c22_minus hold exactly by
/// construction.
struct CollisionRates {
  std::vector<double> c12, c22, q;
  std::vector<double> c12_gain, c12_minus;
  std::vector<double> c22_gain, c22_minus;
  std::vector<double> q_minus;
};

enum class CollisionChannel { C12, C22, Q, C221, C222 };

struct CollisionConfig {
  int surface_panels = 0;  // per-node composite rule panels; 0 = match the grid
  int surface_nodes = 12;
  int c22_panels = 10;     // panels of each inner energy column
  int c22_nodes = 6;
  int threads = 0;         // 0 = hardware concurrency
};

/// Collision operator on a fixed grid and parameter set. Construction
/// precomputes all kernel/weight tables; apply() is then a pure function of
/// the state.
///
/// The condensate-exchange channels are 1-d composite rules per output node
/// (geometric panels, so the small-momentum boundary layers refine with the
/// grid). The binary channel keeps the second momentum on the grid and
/// integrates the third in the energy variable with the resolved-delta
/// domain endpoints hit exactly and breakpoints at the min-factor kinks;
/// a cut crossing a panel interior would otherwise dominate the mass-
/// neutrality error of the whole operator.
class CollisionOperator {
 public:
  CollisionOperator(std::shared_ptr<const RadialGrid> grid, const PhysicalParams& params,
                    CollisionConfig config = {});

  const RadialGrid& grid() const { return *grid_; }
  std::shared_ptr<const RadialGrid> grid_ptr() const { return grid_; }
  const PhysicalParams& params() const { return params_; }
  const CollisionConfig& config() const { return config_; }

  /// All rates and splits in one pass.
  CollisionRates apply(const DistributionState& state) const;

  std::vector<double> c12_apply(const DistributionState& state) const;
  std::vector<double> c22_apply(const DistributionState& state) const;

  /// Second-order part of the binary operator: bracket f3 f4 - f1 f2.
  std::vector<double> c221_apply(const DistributionState& state) const;
  /// Third-order part: bracket f3 f4 (f1 + f2) - f1 f2 (f3 + f4).
  std::vector<double> c222_apply(const DistributionState& state) const;

  std::vector<double> channel(const DistributionState& state, CollisionChannel which) const;

  /// Discrete integral of rate * phi against the radial measure 4 pi u^2 w;
  /// the test values are per grid node.
  double weak_form(const DistributionState& state, std::span<const double> phi,
                   CollisionChannel which) const;
  double weak_form(std::span<const double> rate, std::span<const double> phi) const;

 private:
  void build_tables();
  void eval(const DistributionState& state, CollisionRates* rates,
            std::vector<double>* c221, std::vector<double>* c222) const;

  std::shared_ptr<const RadialGrid> grid_;
  PhysicalParams params_;
  CollisionConfig config_;
  double lam12_ = 0.0;  // lambda1 * n_c

  std::vector<double> node_energy_;

  // Surface rule sample: combined coefficient (kernel * weight * quadrature
  // weight * channel prefactor) plus the energies and interpolation intervals
  // of the two off-node momenta.
  struct SurfaceSample {
    double coef;
    double e_a, e_b;     // E(u), E(partner)
    int32_t iv_a, iv_b;  // interpolation intervals (grid-fixed)
  };
  int n0_ = 0, n1_ = 0;                  // samples per node and channel
  std::vector<SurfaceSample> s0_, s1_;   // node-major

  // Binary-channel column sample over the inner energy variable.
  struct ColumnSample {
    double coef;
    double e3, e4;
    int32_t iv3, iv4;
  };
  std::vector<ColumnSample> t22_;
  std::vector<int64_t> t22_offset_;  // per (i, j) pair, size n^2 + 1
};

}  // namespace bosekin
