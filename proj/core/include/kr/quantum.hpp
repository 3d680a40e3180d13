#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kr/constants.hpp"
#include "kr/ensemble.hpp"
#include "kr/rng.hpp"

namespace kr {

struct KickParams {
  double k = 4.2;        // dimensionless kick strength, >= 0
  double kbar = kTwoPi;  // effective Planck constant, > pi
};

// Minimal spontaneous-emission model: after a kick, with per-kick probability
// se_probability, the atom scatters a photon. The event weights the
// wavefunction by the local pulse intensity 1 + cos(x) (optional) and shifts
// quasimomentum by se_drift plus a uniform draw in [-w, +w]; the integer part
// of the shifted quasimomentum folds back into the ladder index.
struct NoiseModel {
  double se_probability = 0.0;
  double se_kick_width = 0.5;      // one photon recoil = 0.5 two-photon units
  double se_drift = 0.0;
  bool intensity_weighted = true;
};

// Momentum-ladder wavefunction at fixed quasimomentum: amplitude index i
// holds momentum (n_min + i) + beta. Only [lo, hi] is nonzero.
class QuantumState {
 public:
  QuantumState(long n0, double beta, long n_abs_max);

  double beta() const { return beta_; }
  long n_min() const { return n_min_; }
  long size() const { return static_cast<long>(re_.size()); }
  long lo() const { return lo_; }
  long hi() const { return hi_; }
  double momentum_at(long idx) const {
    return static_cast<double>(n_min_ + idx) + beta_;
  }
  std::complex<double> amplitude_of_n(long n) const;

  double norm2() const;
  double mean_energy() const;           // sum |psi_n|^2 (n + beta)^2 / 2
  double prob_of_n(long n) const;       // |<n|psi>|^2
  bool boundary_ok() const { return boundary_ok_; }

 private:
  double beta_;
  long n_min_;
  std::vector<double> re_, im_;
  long lo_, hi_;
  bool boundary_ok_ = true;

  friend class KickOperator;
  friend class FreeEvolver;
  friend void se_scatter(QuantumState&, const NoiseModel&, rng::Stream&);
};

// Momentum-basis matrix elements of exp(i k cos x): c_m = i^m J_m(k),
// m in [-m_max, m_max] returned as indices 0..m_max (c_{-m} = c_m).
std::vector<std::complex<double>> kick_coefficients(double k, int m_max);

// Applies exp(i k cos x) by direct convolution with the Bessel kernel.
// Cutoff m_max = ceil(k) + 30 with coefficients below 1e-14 dropped.
class KickOperator {
 public:
  explicit KickOperator(double k);
  void apply(QuantumState& s);
  int m_max() const { return m_max_; }

 private:
  int m_max_;
  std::vector<double> ke_, ko_;  // signed even/odd Bessel coefficients
  std::vector<double> sre_, sim_;
};

// Applies exp(-i kbar (n + beta)^2 / 2); phase table is rebuilt only when
// beta changes (spontaneous emission) or the ladder is re-indexed.
class FreeEvolver {
 public:
  explicit FreeEvolver(double kbar) : kbar_(kbar) {}
  void apply(QuantumState& s);

 private:
  double kbar_;
  double cached_beta_ = 0.0;
  long cached_n_min_ = 0;
  bool cached_ = false;
  std::vector<double> cos_, sin_;
};

// One scattering event (see NoiseModel).
void se_scatter(QuantumState& s, const NoiseModel& noise, rng::Stream& recoil);

// t alternations of kick followed by free evolution from delta_{n, n0}.
// The ladder is auto-sized to n_abs_max = |n0| + t*(ceil(k)+20) + pad.
QuantumState evolve_atom(long n0, double beta, const KickParams& params,
                         const NoiseModel& noise, int t, std::uint64_t seed,
                         long atom_index);

struct EnergyStat {
  double mean = 0.0;    // mean energy gain over the ensemble
  double stderr_ = 0.0; // standard error of the mean
  long count = 0;
};

// Ensemble average of (final mean energy - initial (n0+beta)^2 / 2).
// Deterministic in spec.seed for every thread count.
EnergyStat ensemble_energy(const EnsembleSpec& spec, const KickParams& params,
                           const NoiseModel& noise, int t, int threads);

// Ensemble-summed |psi_n|^2 binned by p = n + beta (post-evolution beta).
// Mass outside [edges.front(), edges.back()] is dropped.
std::vector<double> momentum_histogram(const EnsembleSpec& spec,
                                       const KickParams& params,
                                       const NoiseModel& noise, int t,
                                       const std::vector<double>& edges,
                                       int threads);

}  // namespace kr
