#include "kr/ensemble.hpp"

#include <cmath>

#include "kr/errors.hpp"
#include "kr/rng.hpp"

namespace kr {

namespace {
double frac(double x) { return x - std::floor(x); }
}  // namespace

Atom sample_atom(const EnsembleSpec& spec, long atom_index) {
  if (atom_index < 0 || atom_index >= spec.atom_count)
    fail_data("atom index out of range");

  const auto i = static_cast<std::uint64_t>(atom_index);
  double beta = 0.0;
  switch (spec.beta_law) {
    case BetaLaw::Point:
      beta = frac(spec.beta0);
      break;
    case BetaLaw::Uniform: {
      rng::Stream s(spec.seed, i, rng::Purpose::Beta);
      beta = s.u01();
      break;
    }
    case BetaLaw::WrappedGaussian: {
      rng::Stream s(spec.seed, i, rng::Purpose::Beta);
      beta = frac(spec.beta0 + spec.sigma_beta * s.normal());
      break;
    }
    case BetaLaw::StratifiedUniform: {
      rng::Stream s(spec.seed, i, rng::Purpose::Beta);
      beta = (static_cast<double>(atom_index) + s.u01()) /
             static_cast<double>(spec.atom_count);
      break;
    }
  }

  long n0 = 0;
  switch (spec.n0_law) {
    case N0Law::Point:
      n0 = spec.n0;
      break;
    case N0Law::DiscreteGaussian: {
      rng::Stream s(spec.seed, i, rng::Purpose::N0);
      n0 = std::lround(spec.sigma_n * s.normal());
      break;
    }
  }
  return {n0, beta};
}

}  // namespace kr
