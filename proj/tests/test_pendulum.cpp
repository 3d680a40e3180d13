#include <initializer_list>
#include <cmath>

#include "doctest.h"
#include "kr/constants.hpp"
#include "kr/errors.hpp"
#include "kr/pendulum.hpp"
#include "kr/rng.hpp"
#include "rk4_pendulum.hpp"

namespace {
bool near_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
}  // namespace

TEST_SUITE_BEGIN("pendulum");

TEST_CASE("resonance time scale") {
  CHECK(near_abs(kr::resonance_time(4.2, 0.0104), 1.0 / std::sqrt(4.2 * 0.0104),
                 1e-15));
  CHECK(near_abs(kr::resonance_time(4.2, 0.0104), 4.78, 1e-2));
  CHECK(near_abs(kr::resonance_time(4.2, -0.0104),
                 kr::resonance_time(4.2, 0.0104), 0.0));
  // |epsilon| x 4 halves the time scale.
  CHECK(near_abs(kr::resonance_time(4.2, 0.04),
                 0.5 * kr::resonance_time(4.2, 0.01), 1e-12));
  CHECK_THROWS_AS(kr::resonance_time(0.0, 0.1), kr::KrError);
  CHECK_THROWS_AS(kr::resonance_time(4.2, 0.0), kr::KrError);
}

TEST_CASE("orbit classification from the conserved energy") {
  // e0 = J'^2/2 + cos(theta); kappa = sqrt((e0 + 1) / 2).
  auto center = kr::pendulum_orbit(kr::kPi, 0.0);
  CHECK(center.kind == kr::PendulumOrbit::Kind::Center);

  auto trapped = kr::pendulum_orbit(2.0, 0.3);
  CHECK(trapped.kind == kr::PendulumOrbit::Kind::Trapped);
  CHECK(trapped.kappa < 1.0);
  CHECK(near_abs(trapped.e0, 0.5 * 0.09 + std::cos(2.0), 1e-15));

  auto sep = kr::pendulum_orbit(kr::kPi, 2.0);
  CHECK(sep.kind == kr::PendulumOrbit::Kind::Separatrix);
  CHECK(near_abs(sep.kappa, 1.0, 1e-12));

  auto saddle = kr::pendulum_orbit(0.0, 0.0);
  CHECK(saddle.kind == kr::PendulumOrbit::Kind::Separatrix);

  auto rot = kr::pendulum_orbit(0.0, 2.0);  // e0 = 3 > 1: free rotation
  CHECK(rot.kind == kr::PendulumOrbit::Kind::Rotating);
  CHECK(rot.kappa > 1.0);
}

TEST_CASE("stationary points stay put") {
  // Stable center theta = pi and the saddle theta = 0, both with J' = 0.
  for (double x : {0.0, 0.7, 5.0, 20.0}) {
    CHECK(kr::pendulum_momentum(kr::kPi, 0.0, x) == 0.0);
    CHECK(near_abs(kr::pendulum_cos_theta(kr::pendulum_orbit(kr::kPi, 0.0), x),
                   -1.0, 1e-15));
    CHECK(kr::pendulum_momentum(0.0, 0.0, x) == 0.0);
    CHECK(near_abs(kr::pendulum_cos_theta(kr::pendulum_orbit(0.0, 0.0), x),
                   1.0, 1e-15));
  }
}

TEST_CASE("pinned closed-form momenta") {
  CHECK(near_abs(kr::pendulum_momentum(2.0, 0.3, 2.7), 0.385118461253793, 1e-12));
  CHECK(near_abs(kr::pendulum_momentum(0.0, 2.0, 1.5), 2.77925113789041, 1e-12));
  CHECK(near_abs(kr::pendulum_momentum(kr::kPi, 2.0, 1.0), 1.29610854732777, 1e-12));
  CHECK(near_abs(kr::pendulum_momentum(kr::kPi, -2.0, 0.7), -1.59341091998575, 1e-12));
  CHECK(near_abs(kr::pendulum_momentum(1.1, -1.7, 5.0), -1.76675755044496, 1e-11));
  CHECK(near_abs(kr::pendulum_momentum(4.5, 0.9, 12.0), -0.580606734694255, 1e-11));
}

TEST_CASE("separatrix orbit launched at the apex follows 2 sech(x)") {
  // theta0 = pi, J'0 = 2 has e0 = 1 exactly (kappa = 1).
  for (double x : {0.0, 0.4, 1.3, 3.0, 8.0}) {
    CHECK(near_abs(kr::pendulum_momentum(kr::kPi, 2.0, x),
                   2.0 / std::cosh(x), 1e-12));
  }
}

TEST_CASE("x = 0 returns the initial momentum") {
  kr::rng::Stream s(500, 0, kr::rng::Purpose::Theta0);
  for (int i = 0; i < 50; ++i) {
    const double th0 = s.uniform(0.0, kr::kTwoPi);
    const double jp0 = s.uniform(-3.0, 3.0);
    CHECK(near_abs(kr::pendulum_momentum(th0, jp0, 0.0), jp0, 1e-12));
    CHECK(near_abs(kr::pendulum_cos_theta(kr::pendulum_orbit(th0, jp0), 0.0),
                   std::cos(th0), 1e-11));
  }
}

TEST_CASE("energy is conserved along every orbit") {
  kr::rng::Stream s(501, 0, kr::rng::Purpose::Theta0);
  for (int i = 0; i < 60; ++i) {
    const double th0 = s.uniform(0.0, kr::kTwoPi);
    const double jp0 = s.uniform(-2.5, 2.5);
    const auto orbit = kr::pendulum_orbit(th0, jp0);
    const double e0 = 0.5 * jp0 * jp0 + std::cos(th0);
    for (double x = 0.0; x <= 20.0; x += 1.37) {
      const double jp = kr::pendulum_momentum(orbit, x);
      const double ct = kr::pendulum_cos_theta(orbit, x);
      CHECK(near_abs(0.5 * jp * jp + ct, e0, 1e-8));
    }
  }
}

TEST_CASE("closed forms match an RK4 integration oracle") {
  // 40 random orbits here; the acceptance suite runs the full set of 100
  // with the production step size.
  kr::rng::Stream s(502, 0, kr::rng::Purpose::Theta0);
  for (int i = 0; i < 40; ++i) {
    const double th0 = s.uniform(0.0, kr::kTwoPi);
    const double jp0 = s.uniform(-3.0, 3.0);
    const auto orbit = kr::pendulum_orbit(th0, jp0);
    double max_err = 0.0;
    rk4_pendulum_track(th0, jp0, 10.0, 2e-4, 0.5,
                       [&](double x, double /*theta*/, double jp_rk) {
                         const double d =
                             std::fabs(kr::pendulum_momentum(orbit, x) - jp_rk);
                         if (d > max_err) max_err = d;
                       });
    CHECK(max_err <= 1e-6);
  }
}

TEST_CASE("trapped orbits stay bounded by 2 kappa, rotating keep their sign") {
  const auto trapped = kr::pendulum_orbit(2.6, 0.4);
  REQUIRE(trapped.kind == kr::PendulumOrbit::Kind::Trapped);
  const auto rot = kr::pendulum_orbit(1.0, -2.4);
  REQUIRE(rot.kind == kr::PendulumOrbit::Kind::Rotating);
  for (double x = 0.0; x <= 30.0; x += 0.211) {
    CHECK(std::fabs(kr::pendulum_momentum(trapped, x)) <=
          2.0 * trapped.kappa + 1e-12);
    CHECK(kr::pendulum_momentum(rot, x) < 0.0);
  }
}

TEST_SUITE_END();
