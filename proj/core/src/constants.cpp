#include "kr/constants.hpp"

#include <cmath>

#include "kr/errors.hpp"

namespace kr {

double PhysicalConstants::k_laser() const {
  return std::sqrt(2.0 * mass * omega_recoil / kHbar);
}

double kbar_from_period(double period_s, const PhysicalConstants& pc) {
  if (!(period_s > 0.0)) fail_config("pulse period must be positive");
  return 8.0 * pc.omega_recoil * period_s;
}

double period_from_kbar(double kbar, const PhysicalConstants& pc) {
  if (!(kbar > 0.0)) fail_config("kbar must be positive");
  return kbar / (8.0 * pc.omega_recoil);
}

EpsilonDecomp epsilon_from_kbar(double kbar) {
  if (!(kbar > kPi)) fail_config("kbar must exceed pi to sit near a principal resonance");
  long ell = std::lround(kbar / kTwoPi);
  if (ell < 1) ell = 1;
  return {kbar - kTwoPi * static_cast<double>(ell), static_cast<int>(ell)};
}

double thermal_sigma_beta(double temperature_K, const PhysicalConstants& pc) {
  if (!(temperature_K >= 0.0)) fail_config("temperature must be non-negative");
  return std::sqrt(pc.mass * kBoltzmann * temperature_K) / (2.0 * kHbar * pc.k_laser());
}

}  // namespace kr
