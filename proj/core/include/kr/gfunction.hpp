#pragma once

#include <vector>

#include "kr/elliptic.hpp"
#include "kr/pendulum.hpp"

namespace kr {

// Quadrature quality for the scaled-energy kernel G.
struct GQuadratureSpec {
  int theta_nodes = 400;   // Gauss-Legendre order in the angle
  int panel_nodes = 24;    // Gauss-Legendre order per momentum panel
  int grading_levels = 8;  // dyadic refinement depth toward the separatrix
};

// G(x) = (1 / 8 pi) int_0^{2 pi} dtheta0 int_{-2}^{2} dJ0 [J'(x) - J0]^2
// over the pendulum flow, evaluated on a fixed product rule whose momentum
// panels are dyadically graded toward the separatrix momenta +-2 sin(t/2).
// Node order is fixed, so results are bit-reproducible; evaluation at
// different x reuses the same precomputed orbit constants.
class GQuadrature {
 public:
  explicit GQuadrature(const GQuadratureSpec& spec = {});
  double operator()(double x) const;
  long node_count() const { return static_cast<long>(nodes_.size()); }

 private:
  struct Node {
    PendulumOrbit orbit;
    JacobiConstants jc;
    double weight = 0.0;
  };
  std::vector<Node> nodes_;
};

// Uniform table of G over [x0, x0 + dx * (g.size() - 1)].
struct GTable {
  double x0 = 0.0;
  double dx = 0.0;
  std::vector<double> g;
  double at(double x) const;  // linear interpolation inside the range
};

GTable build_gtable(double x0, double x1, double dx,
                    const GQuadratureSpec& spec, int threads);

// Scaled-energy decomposition: full ratio = background + pendulum part.
double pendulum_ratio(double x, double g);  // (4 / (pi x)) G(x), 0 at x = 0
double background_ratio(double x);          // closed form, 1 at x = 0
double energy_ratio(double x, double g);

}  // namespace kr
