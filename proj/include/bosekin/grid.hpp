#pragma once

#include <memory>
#include <string>
#include <vector>

namespace bosekin {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, accurate to degree 2n-1. Computed by Newton iteration on the
/// Legendre recurrence; cached internally per n.
const GaussRule& gauss_legendre(int n);

/// Maps an n-point rule onto (a, b); appends to the output arrays.
void gauss_points_on(double a, double b, int n, std::vector<double>& x,
                     std::vector<double>& w);

/// Radial momentum grid: composite Gauss-Legendre panels on (0, u_max) with
/// panel boundaries geometrically refined toward u = 0. Nodes are strictly
/// increasing and interior; the weights integrate 1 over [0, u_max] exactly.
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double u_max = 0.0;
  int panels = 0;
  int nodes_per_panel = 0;
  double octaves = 8.0;
  std::string scheme = "composite-gauss-legendre-geometric";

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Panel boundaries span `octaves` powers of two below u_max, so the panel
/// ratio is 2^(octaves/panels). More panels at fixed octaves therefore
/// refines the bulk as well as the origin; the ratio-2 ladder (panels =
/// octaves) leaves octave-wide top panels that under-resolve the collision
/// rates around the occupied region.
///
/// A positive `snap` replaces the nearest interior boundary with that value;
/// the binary-collision kernel cuts off at the crossover momentum, and that
/// jump must not land inside a quadrature panel.
std::shared_ptr<const RadialGrid> make_radial_grid(int panels, int nodes_per_panel,
                                                   double u_max, double octaves = 8.0,
                                                   double snap = 0.0);

}  // namespace bosekin
