#include "kr/pendulum.hpp"

#include <algorithm>
#include <cmath>

#include "kr/elliptic.hpp"
#include "kr/errors.hpp"
#include "kr/constants.hpp"

namespace kr {

namespace {

constexpr double kCenterCut = 1e-15;      // kappa below this: fixed center
constexpr double kSeparatrixCut = 1e-12;  // |kappa - 1| below this

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

double resonance_time(double k, double epsilon) {
  if (!(k > 0.0)) fail_config("resonance time needs k > 0");
  if (epsilon == 0.0 || !std::isfinite(epsilon)) {
    fail_config("resonance time needs a nonzero detuning");
  }
  return 1.0 / std::sqrt(k * std::fabs(epsilon));
}

PendulumOrbit pendulum_orbit(double theta0, double jprime0) {
  if (!std::isfinite(theta0) || !std::isfinite(jprime0)) {
    fail_config("pendulum initial conditions must be finite");
  }
  PendulumOrbit o;
  o.theta0 = theta0;
  o.jprime0 = jprime0;
  o.e0 = 0.5 * jprime0 * jprime0 + std::cos(theta0);
  o.kappa = std::sqrt(std::max(0.0, 0.5 * (o.e0 + 1.0)));
  const double phi0 = theta0 - kPi;

  if (o.kappa < kCenterCut) {
    o.kind = PendulumOrbit::Kind::Center;
    return o;
  }
  if (std::fabs(o.kappa - 1.0) < kSeparatrixCut) {
    o.kind = PendulumOrbit::Kind::Separatrix;
    if (jprime0 == 0.0) {
      // Exactly on the saddle: the orbit never leaves it.
      o.sigma = 0.0;
      return o;
    }
    o.sigma = sign_of(jprime0);
    const double arg = std::clamp(o.sigma * std::sin(0.5 * phi0),
                                  -(1.0 - 1e-16), 1.0 - 1e-16);
    o.u0 = std::atanh(arg);
    return o;
  }
  if (o.kappa < 1.0) {
    o.kind = PendulumOrbit::Kind::Trapped;
    o.m = o.kappa * o.kappa;
    const double arg =
        std::clamp(std::sin(0.5 * phi0) / o.kappa, -1.0, 1.0);
    o.u0 = ellip_f(std::asin(arg), o.m);
    if (jprime0 < 0.0) {
      o.u0 = 2.0 * ellip_k(o.m) - o.u0;
    }
    return o;
  }
  o.kind = PendulumOrbit::Kind::Rotating;
  o.m = 1.0 / (o.kappa * o.kappa);
  o.sigma = sign_of(jprime0);
  o.u0 = ellip_f(o.sigma * 0.5 * phi0, o.m);
  return o;
}

double pendulum_momentum(const PendulumOrbit& o, double x) {
  switch (o.kind) {
    case PendulumOrbit::Kind::Center:
      return 0.0;
    case PendulumOrbit::Kind::Separatrix: {
      if (o.sigma == 0.0) return 0.0;
      return 2.0 * o.sigma / std::cosh(x + o.u0);
    }
    case PendulumOrbit::Kind::Trapped: {
      const JacobiSCD j = jacobi_elliptic(x + o.u0, o.m);
      return 2.0 * o.kappa * j.cn;
    }
    default: {
      const JacobiSCD j = jacobi_elliptic(o.kappa * x + o.u0, o.m);
      return o.sigma * 2.0 * o.kappa * j.dn;
    }
  }
}

double pendulum_momentum(double theta0, double jprime0, double x) {
  return pendulum_momentum(pendulum_orbit(theta0, jprime0), x);
}

double pendulum_cos_theta(const PendulumOrbit& o, double x) {
  switch (o.kind) {
    case PendulumOrbit::Kind::Center:
      return -1.0;
    case PendulumOrbit::Kind::Separatrix: {
      if (o.sigma == 0.0) return 1.0;
      const double th = std::tanh(x + o.u0);
      return 2.0 * th * th - 1.0;
    }
    case PendulumOrbit::Kind::Trapped: {
      const JacobiSCD j = jacobi_elliptic(x + o.u0, o.m);
      return 2.0 * o.m * j.sn * j.sn - 1.0;
    }
    default: {
      const JacobiSCD j = jacobi_elliptic(o.kappa * x + o.u0, o.m);
      return 2.0 * j.sn * j.sn - 1.0;
    }
  }
}

}  // namespace kr
