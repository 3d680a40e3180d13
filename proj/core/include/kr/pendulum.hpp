#pragma once

namespace kr {

// Characteristic time scale (in kicks) over which the resonant-pendulum
// approximation develops: t_res = 1 / sqrt(k |epsilon|).
double resonance_time(double k, double epsilon);

// Closed-form orbit of the scaled pendulum
//   dtheta/dx = J',   dJ'/dx = sin(theta),
// which governs near-resonant motion in rescaled time x. The stable center
// sits at theta = pi; energy e0 = J'^2/2 + cos(theta) is conserved and
// kappa^2 = (e0 + 1)/2 classifies the orbit.
struct PendulumOrbit {
  enum class Kind { Center, Trapped, Separatrix, Rotating };

  double theta0 = 0.0;
  double jprime0 = 0.0;
  double e0 = 0.0;
  double kappa = 0.0;
  Kind kind = Kind::Center;
  double m = 0.0;      // elliptic parameter of the branch
  double u0 = 0.0;     // phase offset
  double sigma = 1.0;  // direction sign
};

PendulumOrbit pendulum_orbit(double theta0, double jprime0);

// J'(x) along the orbit.
double pendulum_momentum(const PendulumOrbit& orbit, double x);
double pendulum_momentum(double theta0, double jprime0, double x);

// cos(theta(x)) along the orbit.
double pendulum_cos_theta(const PendulumOrbit& orbit, double x);

}  // namespace kr
