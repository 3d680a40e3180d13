#pragma once

#include <vector>

#include "kr/ensemble.hpp"
#include "kr/quantum.hpp"  // EnergyStat

namespace kr {

// Parameters of the near-resonant classical limit map. kbar sits near the
// principal resonance 2 pi ell; epsilon = kbar - 2 pi ell is the small
// expansion parameter playing the role of an effective Planck constant.
struct MapParams {
  double kbar = kTwoPi;
  double k = 4.2;
  double epsilon = 0.0;
  long ell = 1;

  double keff() const;  // |epsilon| * k, the map kick strength
  static MapParams make(double kbar, double k);
};

// Map state: theta is the angle; the action is split as J = j0_red + dj,
// where j0_red encodes the initial condition (only its value mod 2 pi
// matters for the angle update) and dj accumulates kick increments. The
// momentum change in ladder units is dj / |epsilon|, so keeping dj separate
// avoids catastrophic cancellation at small |epsilon|.
struct MapState {
  double theta = 0.0;
  double dj = 0.0;
  double j0_red = 0.0;
};

// J0 = sign(eps) |eps| n0 + pi ell + kbar beta; for eps < 0 the angle is
// shifted by pi, which folds the sign of the kick into the initial state.
MapState init_map_state(const MapParams& params, long n0, double beta,
                        double theta0);

// One period: kick dj += |eps| k sin(theta), then rotate
// theta += j0_red + dj (mod 2 pi).
void map_step(MapState& state, const MapParams& params);

// Kinetic energy gain of a trajectory, (dj / |eps|)^2 / 2.
double map_energy(const MapState& state, const MapParams& params);

// Exact resonant (eps = 0) energy gain after t kicks for quasimomentum beta:
// (k^2/4) sin^2(t a / 2) / sin^2(a / 2) with a = pi ell (1 + 2 beta);
// the ballistic limit (k^2/4) t^2 when sin(a/2) = 0.
double resonant_gain(double k, long ell, double beta, int t);

// Ensemble-averaged energy gain after t kicks. Each atom (n0, beta) carries
// traj_per_atom trajectories with uniform random theta0; atoms are averaged
// with the standard error over atom means. At |epsilon| < 1e-12 the exact
// resonant gain is used and traj_per_atom is ignored.
EnergyStat ensemble_energy_map(const EnsembleSpec& spec,
                               const MapParams& params, int t,
                               int traj_per_atom, int threads);

struct MapScanPoint {
  double kbar = 0.0;
  double epsilon = 0.0;
  long ell = 1;
  EnergyStat stat;
  double ratio = 0.0;  // mean gain / (k^2 t / 4), the resonant ensemble gain
};

std::vector<MapScanPoint> scan_energy_map(const std::vector<double>& kbars,
                                          double k, int t,
                                          const EnsembleSpec& spec,
                                          int traj_per_atom, int threads);

}  // namespace kr
