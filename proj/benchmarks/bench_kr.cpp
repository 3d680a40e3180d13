#include <benchmark/benchmark.h>

#include "kr/constants.hpp"
#include "kr/eclassical.hpp"
#include "kr/elliptic.hpp"
#include "kr/gfunction.hpp"
#include "kr/pendulum.hpp"
#include "kr/quantum.hpp"

namespace {

void BM_KickApply(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  for (auto _ : state) {
    kr::QuantumState s =
        kr::evolve_atom(0, 0.3, {4.2, kr::kTwoPi + 0.05}, {}, t, 1, 0);
    benchmark::DoNotOptimize(s.mean_energy());
  }
}
BENCHMARK(BM_KickApply)->Arg(4)->Arg(16)->Arg(64);

void BM_QuantumEnsemble(benchmark::State& state) {
  kr::EnsembleSpec spec;
  spec.atom_count = state.range(0);
  spec.beta_law = kr::BetaLaw::StratifiedUniform;
  for (auto _ : state) {
    const kr::EnergyStat e =
        kr::ensemble_energy(spec, {4.2, kr::kTwoPi + 0.05}, {}, 16, 1);
    benchmark::DoNotOptimize(e.mean);
  }
}
BENCHMARK(BM_QuantumEnsemble)->Arg(16)->Arg(64);

void BM_MapEnsemble(benchmark::State& state) {
  kr::EnsembleSpec spec;
  spec.atom_count = state.range(0);
  const kr::MapParams params = kr::MapParams::make(kr::kTwoPi + 0.05, 4.2);
  for (auto _ : state) {
    const kr::EnergyStat e = kr::ensemble_energy_map(spec, params, 16, 1, 1);
    benchmark::DoNotOptimize(e.mean);
  }
}
BENCHMARK(BM_MapEnsemble)->Arg(1000)->Arg(10000);

void BM_JacobiEval(benchmark::State& state) {
  const kr::JacobiConstants jc = kr::jacobi_constants(0.7);
  double u = 0.0;
  for (auto _ : state) {
    u += 0.1;
    benchmark::DoNotOptimize(kr::jacobi_eval(jc, u).cn);
  }
}
BENCHMARK(BM_JacobiEval);

void BM_PendulumMomentum(benchmark::State& state) {
  const kr::PendulumOrbit orbit = kr::pendulum_orbit(2.0, 0.3);
  double x = 0.0;
  for (auto _ : state) {
    x += 0.05;
    benchmark::DoNotOptimize(kr::pendulum_momentum(orbit, x));
  }
}
BENCHMARK(BM_PendulumMomentum);

void BM_GEval(benchmark::State& state) {
  kr::GQuadratureSpec spec;
  spec.theta_nodes = static_cast<int>(state.range(0));
  spec.panel_nodes = 12;
  spec.grading_levels = 6;
  const kr::GQuadrature quad(spec);
  double x = 5.0;
  for (auto _ : state) {
    x += 0.01;
    benchmark::DoNotOptimize(quad(x));
  }
}
BENCHMARK(BM_GEval)->Arg(100)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
