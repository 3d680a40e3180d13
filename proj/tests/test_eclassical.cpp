#include <initializer_list>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kr/constants.hpp"
#include "kr/eclassical.hpp"
#include "kr/errors.hpp"
#include "kr/rng.hpp"

namespace {

bool near_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }
bool near_rel(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::fabs(b);
}

double wrap_two_pi(double x) {
  double r = std::fmod(x, kr::kTwoPi);
  if (r < 0.0) r += kr::kTwoPi;
  return r;
}

}  // namespace

TEST_SUITE_BEGIN("eclassical");

TEST_CASE("map params decompose kbar") {
  const auto p = kr::MapParams::make(kr::kTwoPi + 0.1, 4.2);
  CHECK(p.ell == 1);
  CHECK(near_abs(p.epsilon, 0.1, 1e-13));
  CHECK(near_abs(p.keff(), 0.42, 1e-13));
  const auto q = kr::MapParams::make(12.0, 3.0);
  CHECK(q.ell == 2);
  CHECK(near_abs(q.epsilon, -0.5663706143591725, 1e-13));
  CHECK(q.keff() >= 0.0);
}

TEST_CASE("initial action follows the beta-rotor construction") {
  // J0 = sign(eps) |eps| n0 + pi ell + kbar beta (mod 2 pi).
  kr::MapParams p;
  p.kbar = kr::kTwoPi + 0.05;
  p.epsilon = 0.05;
  p.ell = 1;
  p.k = 4.2;

  // n0 = 0, beta = 0: antiresonant center J0 = pi.
  auto s = kr::init_map_state(p, 0, 0.0, 1.0);
  CHECK(near_abs(s.j0_red, kr::kPi, 1e-13));
  CHECK(near_abs(s.theta, 1.0, 1e-13));  // eps > 0: no angle shift
  CHECK(s.dj == 0.0);

  // n0 = 0, beta = 1/2: resonant center J0 = eps/2 (mod 2 pi).
  s = kr::init_map_state(p, 0, 0.5, 0.3);
  CHECK(near_abs(s.j0_red, 0.025, 1e-13));

  // n0 enters through sign(eps) |eps| n0.
  s = kr::init_map_state(p, 3, 0.0, 0.0);
  CHECK(near_abs(s.j0_red, wrap_two_pi(0.05 * 3.0 + kr::kPi), 1e-13));

  // eps < 0 shifts the angle by pi and flips the action contribution.
  kr::MapParams m = p;
  m.kbar = kr::kTwoPi - 0.05;
  m.epsilon = -0.05;
  s = kr::init_map_state(m, 3, 0.0, 0.3);
  CHECK(near_abs(s.theta, 0.3 + kr::kPi, 1e-13));
  CHECK(near_abs(s.j0_red, wrap_two_pi(-0.05 * 3.0 + kr::kPi), 1e-13));
}

TEST_CASE("single map step: kick then rotate with the updated action") {
  kr::MapParams p;
  p.kbar = kr::kTwoPi + 0.25;
  p.epsilon = 0.25;
  p.ell = 1;
  p.k = 4.0;  // |eps| k = 1
  REQUIRE(near_abs(p.keff(), 1.0, 1e-14));

  kr::MapState s;
  s.theta = kr::kPi / 2.0;
  s.dj = 0.0;
  s.j0_red = 0.0;
  kr::map_step(s, p);
  CHECK(near_abs(s.dj, 1.0, 1e-14));
  CHECK(near_abs(s.theta, kr::kPi / 2.0 + 1.0, 1e-14));
}

TEST_CASE("fixed point of the map never moves") {
  kr::MapParams p;
  p.kbar = kr::kTwoPi + 0.1;
  p.epsilon = 0.1;
  p.ell = 1;
  p.k = 4.2;
  kr::MapState s;
  s.theta = kr::kPi;
  s.dj = 0.0;
  s.j0_red = 0.0;  // total action zero mod 2 pi
  for (int i = 0; i < 1000; ++i) kr::map_step(s, p);
  CHECK(near_abs(s.dj, 0.0, 1e-9));
  CHECK(near_abs(wrap_two_pi(s.theta), kr::kPi, 1e-9));
}

TEST_CASE("zero kick strength leaves the action constant") {
  kr::MapParams p;
  p.kbar = kr::kTwoPi + 0.1;
  p.epsilon = 0.1;
  p.ell = 1;
  p.k = 0.0;
  kr::MapState s;
  s.theta = 1.234;
  s.dj = 0.0;
  s.j0_red = 0.7;
  for (int i = 0; i < 10; ++i) kr::map_step(s, p);
  CHECK(s.dj == 0.0);
  CHECK(near_abs(wrap_two_pi(s.theta), wrap_two_pi(1.234 + 10.0 * 0.7), 1e-12));
  CHECK(kr::map_energy(s, p) == 0.0);
}

TEST_CASE("map energy converts accumulated action to ladder units") {
  kr::MapParams p;
  p.kbar = kr::kTwoPi + 0.2;
  p.epsilon = 0.2;
  p.ell = 1;
  p.k = 4.2;
  kr::MapState s;
  s.dj = 0.5;
  CHECK(near_abs(kr::map_energy(s, p), 0.5 * (0.5 / 0.2) * (0.5 / 0.2), 1e-13));
}

TEST_CASE("one map step preserves phase-space area") {
  // Central-difference Jacobian of (theta, dj) -> (theta', dj') at 100
  // random points; the determinant must be 1.
  kr::MapParams p;
  p.kbar = kr::kTwoPi + 0.07;
  p.epsilon = 0.07;
  p.ell = 1;
  p.k = 4.2;
  const double h = 1e-6;
  kr::rng::Stream rnd(42, 0, kr::rng::Purpose::Theta0);
  for (int i = 0; i < 100; ++i) {
    const double th = rnd.uniform(0.0, kr::kTwoPi);
    const double dj = rnd.uniform(-2.0, 2.0);
    const double j0 = rnd.uniform(0.0, kr::kTwoPi);
    auto step = [&](double a, double b, double* ta, double* tb) {
      kr::MapState s;
      s.theta = a;
      s.dj = b;
      s.j0_red = j0;
      kr::map_step(s, p);
      *ta = s.theta;
      *tb = s.dj;
    };
    double t1, j1, t2, j2, t3, j3, t4, j4;
    step(th + h, dj, &t1, &j1);
    step(th - h, dj, &t2, &j2);
    step(th, dj + h, &t3, &j3);
    step(th, dj - h, &t4, &j4);
    const double dtheta_dth = (t1 - t2) / (2.0 * h);
    const double ddj_dth = (j1 - j2) / (2.0 * h);
    const double dtheta_ddj = (t3 - t4) / (2.0 * h);
    const double ddj_ddj = (j3 - j4) / (2.0 * h);
    const double det = dtheta_dth * ddj_ddj - ddj_dth * dtheta_ddj;
    CHECK(near_abs(det, 1.0, 1e-8));
  }
}

TEST_CASE("exact resonant gain: pinned values") {
  // (k^2/4) sin^2(t a/2) / sin^2(a/2), a = pi ell (1 + 2 beta).
  CHECK(near_abs(kr::resonant_gain(4.2, 1, 0.25, 10), 8.82, 1e-10));
  CHECK(near_abs(kr::resonant_gain(4.2, 1, 0.5, 16), 1128.96, 1e-9));
  CHECK(kr::resonant_gain(4.2, 1, 0.0, 16) < 1e-25);  // antiresonant beta
  CHECK(near_rel(kr::resonant_gain(4.2, 1, 0.3, 8), 11.545529890387, 1e-10));
  CHECK(near_rel(kr::resonant_gain(4.1, 2, 0.37, 12), 1.07171575426356, 1e-10));
  CHECK(kr::resonant_gain(0.0, 1, 0.3, 10) == 0.0);
  CHECK(kr::resonant_gain(4.2, 1, 0.25, 0) == 0.0);
}

TEST_CASE("ensemble energy: analytic route at exact resonance") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::StratifiedUniform;
  spec.atom_count = 20000;
  spec.seed = 12;
  const auto p = kr::MapParams::make(kr::kTwoPi, 4.2);
  REQUIRE(std::fabs(p.epsilon) < 1e-12);
  const int t = 16;
  const auto stat = kr::ensemble_energy_map(spec, p, t, 1, 1);
  const double target = 4.2 * 4.2 * t / 4.0;
  CHECK(std::fabs(stat.mean - target) <= 3.0 * stat.stderr_);
  CHECK(near_rel(stat.mean, target, 0.05));
}

TEST_CASE("ensemble energy: eps -> 0 recovers the resonant growth (5%)") {
  for (double eps : {1e-3, 1e-4}) {
    kr::EnsembleSpec spec;
    spec.beta_law = kr::BetaLaw::StratifiedUniform;
    spec.atom_count = 20000;
    spec.seed = 12;
    kr::MapParams p;
    p.kbar = kr::kTwoPi + eps;
    p.epsilon = eps;
    p.ell = 1;
    p.k = 4.2;
    for (int t : {7, 20}) {
      const auto stat = kr::ensemble_energy_map(spec, p, t, 1, 1);
      CHECK(near_rel(stat.mean, 4.2 * 4.2 * t / 4.0, 0.05));
    }
  }
}

TEST_CASE("ensemble energy: k = 0 gives zero exactly") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::Uniform;
  spec.atom_count = 100;
  kr::MapParams p = kr::MapParams::make(kr::kTwoPi + 0.1, 0.0);
  const auto stat = kr::ensemble_energy_map(spec, p, 10, 2, 1);
  CHECK(stat.mean == 0.0);
}

TEST_CASE("ensemble energy is deterministic and thread-independent") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::Uniform;
  spec.atom_count = 500;
  spec.seed = 77;
  const auto p = kr::MapParams::make(kr::kTwoPi + 0.12, 4.2);
  const auto a = kr::ensemble_energy_map(spec, p, 12, 3, 1);
  const auto b = kr::ensemble_energy_map(spec, p, 12, 3, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.stderr_ == b.stderr_);
  const auto c = kr::ensemble_energy_map(spec, p, 12, 3, 1);
  CHECK(a.mean == c.mean);
}

TEST_CASE("scan: single resonant point has ratio 1") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::StratifiedUniform;
  spec.atom_count = 20000;
  spec.seed = 4;
  const std::vector<double> grid = {kr::kTwoPi};
  const auto pts = kr::scan_energy_map(grid, 4.2, 16, spec, 1, 1);
  REQUIRE(pts.size() == 1);
  CHECK(near_abs(pts[0].ratio, 1.0, 0.02));
  CHECK(pts[0].ell == 1);
}

TEST_CASE("scan: energy curve is symmetric in epsilon (3 standard errors)") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::StratifiedUniform;
  spec.atom_count = 30000;
  spec.seed = 5;
  const std::vector<double> grid = {kr::kTwoPi - 0.15, kr::kTwoPi + 0.15};
  const auto pts = kr::scan_energy_map(grid, 4.2, 10, spec, 1, 1);
  REQUIRE(pts.size() == 2);
  const double se = std::sqrt(pts[0].stat.stderr_ * pts[0].stat.stderr_ +
                              pts[1].stat.stderr_ * pts[1].stat.stderr_);
  CHECK(std::fabs(pts[0].stat.mean - pts[1].stat.mean) <= 3.0 * se);
}

TEST_CASE("scan: k = 0 gives all zeros") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::Uniform;
  spec.atom_count = 200;
  const std::vector<double> grid = {kr::kTwoPi - 0.1, kr::kTwoPi, kr::kTwoPi + 0.1};
  const auto pts = kr::scan_energy_map(grid, 0.0, 8, spec, 1, 1);
  for (const auto& pt : pts) {
    CHECK(pt.stat.mean == 0.0);
    CHECK(pt.ratio == 0.0);
  }
}

TEST_CASE("scan rejects grid values at or below pi") {
  kr::EnsembleSpec spec;
  spec.atom_count = 10;
  const std::vector<double> grid = {2.0};
  CHECK_THROWS_AS(kr::scan_energy_map(grid, 4.2, 4, spec, 1, 1), kr::KrError);
}

TEST_CASE("cross-engine agreement at moderate epsilon") {
  const double kbar = kr::kTwoPi + 0.04;
  const double k = 4.2;
  const int t = 6;

  kr::EnsembleSpec qspec;
  qspec.beta_law = kr::BetaLaw::StratifiedUniform;
  qspec.atom_count = 600;
  qspec.seed = 9;
  kr::KickParams params;
  params.k = k;
  params.kbar = kbar;
  const auto q = kr::ensemble_energy(qspec, params, kr::NoiseModel{}, t, 1);

  kr::EnsembleSpec mspec = qspec;
  mspec.atom_count = 30000;
  const auto m = kr::ensemble_energy_map(mspec, kr::MapParams::make(kbar, k),
                                         t, 1, 1);
  CHECK(near_rel(q.mean, m.mean, 0.10));
}

TEST_SUITE_END();
