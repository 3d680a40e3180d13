#pragma once

namespace kr {

// SI values (2019 redefinition; CODATA 2018 for the atomic mass unit).
inline constexpr double kPlanckH = 6.62607015e-34;       // J s (exact)
inline constexpr double kHbar = 1.0545718176461565e-34;  // J s, h / (2 pi)
inline constexpr double kBoltzmann = 1.380649e-23;       // J / K (exact)
inline constexpr double kAmu = 1.66053906660e-27;        // kg

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Atom and standing-wave parameters. Defaults describe Rb-85 kicked by a
// 780 nm optical standing wave, quoted through the two-photon recoil
// frequency omega_r = hbar k_l^2 / (2 m) = 2*pi * 3.86 kHz.
struct PhysicalConstants {
  double omega_recoil = kTwoPi * 3860.0;  // rad/s
  double mass = 84.911789738 * kAmu;      // kg

  // Laser wavenumber recovered from omega_recoil and mass (1/m).
  double k_laser() const;
};

// Dimensionless effective Planck constant for pulse period T (seconds):
// kbar = 8 * omega_r * T.
double kbar_from_period(double period_s, const PhysicalConstants& pc = {});
double period_from_kbar(double kbar, const PhysicalConstants& pc = {});

// Decomposition kbar = 2*pi*ell + epsilon with integer ell >= 1 chosen to
// minimize |epsilon| (so |epsilon| <= pi). Values kbar <= pi are rejected.
struct EpsilonDecomp {
  double epsilon;
  int ell;
};
EpsilonDecomp epsilon_from_kbar(double kbar);

// r.m.s. quasimomentum spread of a thermal cloud at temperature T (kelvin),
// in two-photon recoil units: sigma_beta = sqrt(m kB T) / (2 hbar k_l).
double thermal_sigma_beta(double temperature_K, const PhysicalConstants& pc = {});

}  // namespace kr
