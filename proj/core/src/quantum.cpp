#include "kr/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kr/bessel.hpp"
#include "kr/errors.hpp"
#include "kr/parallel.hpp"

namespace kr {

namespace {

constexpr double kTrimAmp2 = 1e-28;      // drop cells with |amp| < 1e-14
constexpr double kBoundaryAmp2 = 1e-16;  // ladder-edge warning at |amp| > 1e-8

void validate_kick_params(const KickParams& p) {
  if (!std::isfinite(p.k) || p.k < 0.0) {
    fail_config("kick strength k must be finite and non-negative");
  }
  if (!std::isfinite(p.kbar) || p.kbar <= 0.0) {
    fail_config("kbar must be finite and positive");
  }
}

void validate_noise(const NoiseModel& n) {
  if (!(n.se_probability >= 0.0 && n.se_probability <= 1.0)) {
    fail_config("se_probability must lie in [0, 1]");
  }
  if (!(n.se_kick_width >= 0.0) || !std::isfinite(n.se_drift)) {
    fail_config("se_kick_width must be >= 0 and se_drift finite");
  }
}

}  // namespace

QuantumState::QuantumState(long n0, double beta, long n_abs_max) {
  if (n_abs_max < std::labs(n0)) {
    fail_config("momentum ladder too small for the initial index");
  }
  if (!std::isfinite(beta)) fail_config("beta must be finite");
  beta_ = beta - std::floor(beta);
  n_min_ = -n_abs_max;
  const long size = 2 * n_abs_max + 1;
  re_.assign(size, 0.0);
  im_.assign(size, 0.0);
  lo_ = hi_ = n0 - n_min_;
  re_[lo_] = 1.0;
}

std::complex<double> QuantumState::amplitude_of_n(long n) const {
  const long idx = n - n_min_;
  if (idx < 0 || idx >= size()) return {0.0, 0.0};
  return {re_[idx], im_[idx]};
}

double QuantumState::norm2() const {
  double sum = 0.0, c = 0.0;
  for (long i = lo_; i <= hi_; ++i) {
    const double term = re_[i] * re_[i] + im_[i] * im_[i];
    const double y = term - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double QuantumState::mean_energy() const {
  double sum = 0.0, c = 0.0;
  for (long i = lo_; i <= hi_; ++i) {
    const double p = momentum_at(i);
    const double term = (re_[i] * re_[i] + im_[i] * im_[i]) * 0.5 * p * p;
    const double y = term - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double QuantumState::prob_of_n(long n) const {
  const long idx = n - n_min_;
  if (idx < lo_ || idx > hi_) return 0.0;
  return re_[idx] * re_[idx] + im_[idx] * im_[idx];
}

std::vector<std::complex<double>> kick_coefficients(double k, int m_max) {
  if (!std::isfinite(k) || k < 0.0) {
    fail_config("kick strength k must be finite and non-negative");
  }
  if (m_max < 0) fail_config("m_max must be non-negative");
  const std::vector<double> j = bessel_j_array(k, m_max);
  std::vector<std::complex<double>> c(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    switch (m & 3) {
      case 0: c[m] = {j[m], 0.0}; break;
      case 1: c[m] = {0.0, j[m]}; break;
      case 2: c[m] = {-j[m], 0.0}; break;
      default: c[m] = {0.0, -j[m]}; break;
    }
  }
  return c;
}

KickOperator::KickOperator(double k) {
  if (!std::isfinite(k) || k < 0.0) {
    fail_config("kick strength k must be finite and non-negative");
  }
  m_max_ = static_cast<int>(std::ceil(k)) + 30;
  std::vector<double> j = bessel_j_array(k, m_max_);
  while (m_max_ > 0 && std::fabs(j[m_max_]) < 1e-14) --m_max_;
  ke_.assign(m_max_ + 1, 0.0);
  ko_.assign(m_max_ + 1, 0.0);
  for (int m = 0; m <= m_max_; ++m) {
    if ((m & 1) == 0) {
      ke_[m] = ((m & 3) == 0) ? j[m] : -j[m];
    } else {
      ko_[m] = ((m & 3) == 1) ? j[m] : -j[m];
    }
  }
}

void KickOperator::apply(QuantumState& s) {
  const long size = s.size();
  if (static_cast<long>(sre_.size()) != size) {
    sre_.assign(size, 0.0);
    sim_.assign(size, 0.0);
  }
  const long lo = s.lo_, hi = s.hi_;
  const long new_lo = std::max<long>(0, lo - m_max_);
  const long new_hi = std::min<long>(size - 1, hi + m_max_);
  std::fill(sre_.begin() + new_lo, sre_.begin() + new_hi + 1, 0.0);
  std::fill(sim_.begin() + new_lo, sim_.begin() + new_hi + 1, 0.0);

  const double* re = s.re_.data();
  const double* im = s.im_.data();
  double* sre = sre_.data();
  double* sim = sim_.data();

  const double a0 = ke_[0];
  for (long n = lo; n <= hi; ++n) {
    sre[n] = a0 * re[n];
    sim[n] = a0 * im[n];
  }
  for (int m = 1; m <= m_max_; ++m) {
    if ((m & 1) == 0) {
      const double a = ke_[m];
      long n1 = lo + m, n2 = std::min(new_hi, hi + m);
      for (long n = n1; n <= n2; ++n) {
        sre[n] += a * re[n - m];
        sim[n] += a * im[n - m];
      }
      n1 = std::max(new_lo, lo - m);
      n2 = hi - m;
      for (long n = n1; n <= n2; ++n) {
        sre[n] += a * re[n + m];
        sim[n] += a * im[n + m];
      }
    } else {
      const double b = ko_[m];
      long n1 = lo + m, n2 = std::min(new_hi, hi + m);
      for (long n = n1; n <= n2; ++n) {
        sre[n] -= b * im[n - m];
        sim[n] += b * re[n - m];
      }
      n1 = std::max(new_lo, lo - m);
      n2 = hi - m;
      for (long n = n1; n <= n2; ++n) {
        sre[n] -= b * im[n + m];
        sim[n] += b * re[n + m];
      }
    }
  }

  if (new_lo == 0 && sre[0] * sre[0] + sim[0] * sim[0] > kBoundaryAmp2) {
    s.boundary_ok_ = false;
  }
  if (new_hi == size - 1 &&
      sre[new_hi] * sre[new_hi] + sim[new_hi] * sim[new_hi] > kBoundaryAmp2) {
    s.boundary_ok_ = false;
  }

  long tl = new_lo, th = new_hi;
  while (tl < th && sre[tl] * sre[tl] + sim[tl] * sim[tl] < kTrimAmp2) ++tl;
  while (th > tl && sre[th] * sre[th] + sim[th] * sim[th] < kTrimAmp2) --th;

  std::fill(s.re_.begin() + lo, s.re_.begin() + hi + 1, 0.0);
  std::fill(s.im_.begin() + lo, s.im_.begin() + hi + 1, 0.0);
  std::copy(sre_.begin() + tl, sre_.begin() + th + 1, s.re_.begin() + tl);
  std::copy(sim_.begin() + tl, sim_.begin() + th + 1, s.im_.begin() + tl);
  s.lo_ = tl;
  s.hi_ = th;
}

void FreeEvolver::apply(QuantumState& s) {
  const long size = s.size();
  const bool key_ok = cached_ && cached_beta_ == s.beta_ &&
                      cached_n_min_ == s.n_min_ &&
                      static_cast<long>(cos_.size()) == size;
  if (!key_ok) {
    cos_.assign(size, 2.0);  // 2.0 marks "not yet computed"
    sin_.assign(size, 0.0);
    cached_beta_ = s.beta_;
    cached_n_min_ = s.n_min_;
    cached_ = true;
  }
  double* cs = cos_.data();
  double* sn = sin_.data();
  for (long i = s.lo_; i <= s.hi_; ++i) {
    if (cs[i] > 1.5) {
      const double p = s.momentum_at(i);
      const double phi = -0.5 * kbar_ * p * p;
      cs[i] = std::cos(phi);
      sn[i] = std::sin(phi);
    }
    const double re = s.re_[i], im = s.im_[i];
    s.re_[i] = re * cs[i] - im * sn[i];
    s.im_[i] = re * sn[i] + im * cs[i];
  }
}

void se_scatter(QuantumState& s, const NoiseModel& noise, rng::Stream& recoil) {
  const double dbeta =
      noise.se_drift +
      recoil.uniform(-noise.se_kick_width, noise.se_kick_width);
  if (noise.intensity_weighted) {
    // Weight by the pulse intensity profile 1 + cos(x), then renormalize:
    // in the momentum basis psi_n -> psi_n + (psi_{n-1} + psi_{n+1}) / 2.
    const long size = s.size();
    const long nlo = std::max<long>(0, s.lo_ - 1);
    const long nhi = std::min<long>(size - 1, s.hi_ + 1);
    const double before = s.norm2();
    std::vector<double> nre(nhi - nlo + 1, 0.0), nim(nhi - nlo + 1, 0.0);
    for (long i = nlo; i <= nhi; ++i) {
      double re = s.re_[i], im = s.im_[i];
      if (i > 0) {
        re += 0.5 * s.re_[i - 1];
        im += 0.5 * s.im_[i - 1];
      }
      if (i + 1 < size) {
        re += 0.5 * s.re_[i + 1];
        im += 0.5 * s.im_[i + 1];
      }
      nre[i - nlo] = re;
      nim[i - nlo] = im;
    }
    double after = 0.0;
    for (std::size_t i = 0; i < nre.size(); ++i) {
      after += nre[i] * nre[i] + nim[i] * nim[i];
    }
    if (after > 0.0) {
      const double scale = std::sqrt(before / after);
      for (long i = nlo; i <= nhi; ++i) {
        s.re_[i] = scale * nre[i - nlo];
        s.im_[i] = scale * nim[i - nlo];
      }
      s.lo_ = nlo;
      s.hi_ = nhi;
    }
  }
  const double braw = s.beta_ + dbeta;
  const double carry = std::floor(braw);
  s.beta_ = braw - carry;
  s.n_min_ += static_cast<long>(carry);
}

QuantumState evolve_atom(long n0, double beta, const KickParams& params,
                         const NoiseModel& noise, int t, std::uint64_t seed,
                         long atom_index) {
  validate_kick_params(params);
  validate_noise(noise);
  if (t < 0) fail_config("kick count must be non-negative");
  const long per_kick = static_cast<long>(std::ceil(params.k)) + 20;
  const long n_abs_max = std::labs(n0) + static_cast<long>(t) * per_kick + 2;
  QuantumState s(n0, beta, n_abs_max);
  if (t == 0) return s;
  KickOperator kick(params.k);
  FreeEvolver free_op(params.kbar);
  const bool with_se = noise.se_probability > 0.0;
  rng::Stream events(seed, static_cast<std::uint64_t>(atom_index),
                     rng::Purpose::SeEvent);
  rng::Stream recoil(seed, static_cast<std::uint64_t>(atom_index),
                     rng::Purpose::SeRecoil);
  for (int j = 0; j < t; ++j) {
    kick.apply(s);
    if (with_se && events.u01() < noise.se_probability) {
      se_scatter(s, noise, recoil);
    }
    free_op.apply(s);
  }
  return s;
}

EnergyStat ensemble_energy(const EnsembleSpec& spec, const KickParams& params,
                           const NoiseModel& noise, int t, int threads) {
  validate_kick_params(params);
  validate_noise(noise);
  if (spec.atom_count < 1) fail_config("atom_count must be >= 1");
  if (threads <= 0) threads = default_thread_count();
  std::vector<double> gains(spec.atom_count);
  parallel_for(spec.atom_count, threads, [&](long i) {
    const Atom a = sample_atom(spec, i);
    const QuantumState s =
        evolve_atom(a.n0, a.beta, params, noise, t, spec.seed, i);
    const double p0 = static_cast<double>(a.n0) + (a.beta - std::floor(a.beta));
    gains[i] = s.mean_energy() - 0.5 * p0 * p0;
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

std::vector<double> momentum_histogram(const EnsembleSpec& spec,
                                       const KickParams& params,
                                       const NoiseModel& noise, int t,
                                       const std::vector<double>& edges,
                                       int threads) {
  validate_kick_params(params);
  validate_noise(noise);
  if (spec.atom_count < 1) fail_config("atom_count must be >= 1");
  if (edges.size() < 2) fail_config("histogram needs at least two edges");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      fail_config("histogram edges must be strictly increasing");
    }
  }
  if (threads <= 0) threads = default_thread_count();
  const long bins = static_cast<long>(edges.size()) - 1;
  constexpr long kChunk = 64;
  const long n_chunks = (spec.atom_count + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(n_chunks) * bins, 0.0);
  parallel_for(n_chunks, threads, [&](long ci) {
    double* h = partial.data() + static_cast<std::size_t>(ci) * bins;
    const long a0 = ci * kChunk;
    const long a1 = std::min(spec.atom_count, a0 + kChunk);
    for (long i = a0; i < a1; ++i) {
      const Atom a = sample_atom(spec, i);
      const QuantumState s =
          evolve_atom(a.n0, a.beta, params, noise, t, spec.seed, i);
      for (long idx = s.lo(); idx <= s.hi(); ++idx) {
        const double p = s.momentum_at(idx);
        const auto it = std::upper_bound(edges.begin(), edges.end(), p);
        const long b = static_cast<long>(it - edges.begin()) - 1;
        if (b >= 0 && b < bins) {
          const auto amp = s.amplitude_of_n(s.n_min() + idx);
          h[b] += amp.real() * amp.real() + amp.imag() * amp.imag();
        }
      }
    }
  });
  std::vector<double> hist(bins, 0.0);
  for (long ci = 0; ci < n_chunks; ++ci) {
    const double* h = partial.data() + static_cast<std::size_t>(ci) * bins;
    for (long b = 0; b < bins; ++b) hist[b] += h[b];
  }
  const double inv = 1.0 / static_cast<double>(spec.atom_count);
  for (double& v : hist) v *= inv;
  return hist;
}

}  // namespace kr
