#include "kr/eclassical.hpp"

#include <cmath>

#include "kr/constants.hpp"
#include "kr/errors.hpp"
#include "kr/parallel.hpp"
#include "kr/rng.hpp"

namespace kr {

namespace {

constexpr double kExactResonance = 1e-12;  // |epsilon| below this: eps = 0

double wrap_two_pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

void validate_map_params(const MapParams& p) {
  if (!std::isfinite(p.k) || p.k < 0.0) {
    fail_config("kick strength k must be finite and non-negative");
  }
  if (!std::isfinite(p.epsilon)) fail_config("epsilon must be finite");
  if (p.ell < 1) fail_config("resonance order ell must be >= 1");
}

}  // namespace

double MapParams::keff() const { return std::fabs(epsilon) * k; }

MapParams MapParams::make(double kbar, double k) {
  if (!std::isfinite(k) || k < 0.0) {
    fail_config("kick strength k must be finite and non-negative");
  }
  const EpsilonDecomp d = epsilon_from_kbar(kbar);
  MapParams p;
  p.kbar = kbar;
  p.k = k;
  p.epsilon = d.epsilon;
  p.ell = d.ell;
  return p;
}

MapState init_map_state(const MapParams& params, long n0, double beta,
                        double theta0) {
  validate_map_params(params);
  if (!std::isfinite(beta) || !std::isfinite(theta0)) {
    fail_config("beta and theta0 must be finite");
  }
  const double sign = params.epsilon < 0.0 ? -1.0 : 1.0;
  const double j0 = sign * std::fabs(params.epsilon) * static_cast<double>(n0) +
                    kPi * static_cast<double>(params.ell) + params.kbar * beta;
  MapState s;
  s.j0_red = wrap_two_pi(j0);
  s.theta = wrap_two_pi(params.epsilon < 0.0 ? theta0 + kPi : theta0);
  s.dj = 0.0;
  return s;
}

void map_step(MapState& state, const MapParams& params) {
  state.dj += params.keff() * std::sin(state.theta);
  state.theta = wrap_two_pi(state.theta + state.j0_red + state.dj);
}

double map_energy(const MapState& state, const MapParams& params) {
  const double ae = std::fabs(params.epsilon);
  if (ae < 1e-300) return 0.0;
  const double dn = state.dj / ae;
  return 0.5 * dn * dn;
}

double resonant_gain(double k, long ell, double beta, int t) {
  if (!(k >= 0.0) || ell < 1 || t < 0) {
    fail_config("resonant gain needs k >= 0, ell >= 1, t >= 0");
  }
  const double a = kPi * static_cast<double>(ell) * (1.0 + 2.0 * beta);
  const double sh = std::sin(0.5 * a);
  const double quarter = 0.25 * k * k;
  if (std::fabs(sh) < 1e-9) {
    return quarter * static_cast<double>(t) * static_cast<double>(t);
  }
  const double st = std::sin(0.5 * a * static_cast<double>(t));
  return quarter * st * st / (sh * sh);
}

EnergyStat ensemble_energy_map(const EnsembleSpec& spec,
                               const MapParams& params, int t,
                               int traj_per_atom, int threads) {
  validate_map_params(params);
  if (spec.atom_count < 1) fail_config("atom_count must be >= 1");
  if (traj_per_atom < 1) fail_config("traj_per_atom must be >= 1");
  if (t < 0) fail_config("kick count must be non-negative");
  if (threads <= 0) threads = default_thread_count();

  std::vector<double> gains(spec.atom_count);
  const bool exact = std::fabs(params.epsilon) < kExactResonance;
  parallel_for(spec.atom_count, threads, [&](long i) {
    const Atom a = sample_atom(spec, i);
    if (exact) {
      gains[i] = resonant_gain(params.k, params.ell, a.beta, t);
      return;
    }
    rng::Stream angles(spec.seed, static_cast<std::uint64_t>(i),
                       rng::Purpose::Theta0);
    double acc = 0.0;
    for (int j = 0; j < traj_per_atom; ++j) {
      MapState s =
          init_map_state(params, a.n0, a.beta, angles.u01() * kTwoPi);
      for (int step = 0; step < t; ++step) map_step(s, params);
      acc += map_energy(s, params);
    }
    gains[i] = acc / static_cast<double>(traj_per_atom);
  });

  double sum = 0.0, c = 0.0;
  for (long i = 0; i < spec.atom_count; ++i) {
    const double y = gains[i] - c;
    const double tt = sum + y;
    c = (tt - sum) - y;
    sum = tt;
  }
  EnergyStat out;
  out.count = spec.atom_count;
  out.mean = sum / static_cast<double>(spec.atom_count);
  if (spec.atom_count > 1) {
    double ss = 0.0;
    for (long i = 0; i < spec.atom_count; ++i) {
      const double d = gains[i] - out.mean;
      ss += d * d;
    }
    out.stderr_ = std::sqrt(
        ss / (static_cast<double>(spec.atom_count) *
              static_cast<double>(spec.atom_count - 1)));
  }
  return out;
}

std::vector<MapScanPoint> scan_energy_map(const std::vector<double>& kbars,
                                          double k, int t,
                                          const EnsembleSpec& spec,
                                          int traj_per_atom, int threads) {
  std::vector<MapScanPoint> out;
  out.reserve(kbars.size());
  for (const double kbar : kbars) {
    MapScanPoint pt;
    const MapParams params = MapParams::make(kbar, k);
    pt.kbar = kbar;
    pt.epsilon = params.epsilon;
    pt.ell = params.ell;
    pt.stat = ensemble_energy_map(spec, params, t, traj_per_atom, threads);
    const double res = 0.25 * k * k * static_cast<double>(t);
    pt.ratio = (res > 0.0) ? pt.stat.mean / res : 0.0;
    out.push_back(pt);
  }
  return out;
}

}  // namespace kr
