#pragma once

#include <cstdint>

namespace kr {

// Quasimomentum laws. StratifiedUniform places atom i's beta inside stratum
// [i/N, (i+1)/N): a variance-reduction option for ensemble means that
// intentionally couples the draw to atom_count (the other laws keep atom i's
// draw independent of atom_count).
enum class BetaLaw { Point, Uniform, WrappedGaussian, StratifiedUniform };

enum class N0Law { Point, DiscreteGaussian };

// Statistical description of the initial atoms. Sampling is counter-based:
// atom i's values depend only on (seed, i) and the law parameters.
struct EnsembleSpec {
  BetaLaw beta_law = BetaLaw::Uniform;
  double beta0 = 0.0;       // Point value / WrappedGaussian center
  double sigma_beta = 2.6;  // WrappedGaussian spread (two-photon recoil units)

  N0Law n0_law = N0Law::Point;
  long n0 = 0;        // Point value
  double sigma_n = 1.0;  // DiscreteGaussian spread

  long atom_count = 10000;
  std::uint64_t seed = 1;
};

struct Atom {
  long n0;
  double beta;  // in [0, 1)
};

Atom sample_atom(const EnsembleSpec& spec, long atom_index);

}  // namespace kr
