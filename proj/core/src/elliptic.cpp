#include "kr/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "kr/constants.hpp"
#include "kr/errors.hpp"

namespace kr {

namespace {

constexpr int kAgmMax = 40;

struct AgmTables {
  double a[kAgmMax + 1];
  double b[kAgmMax + 1];
  double c[kAgmMax + 1];
  int n = 0;  // index of the last (converged) element
};

// Arithmetic-geometric mean of (1, sqrt(1-m)); c_0 = sqrt(m).
AgmTables agm_tables(double m) {
  AgmTables t;
  t.a[0] = 1.0;
  t.b[0] = std::sqrt(1.0 - m);
  t.c[0] = std::sqrt(m);
  int i = 0;
  // Quadratic convergence: stopping once |c_i| <= 1e-15 a_i leaves a relative
  // error of order 1e-30.  A tighter cut would chase 1-ulp rounding noise in
  // (a_i - b_i) and never terminate.
  while (i < kAgmMax && std::fabs(t.c[i]) > 1e-15 * t.a[i]) {
    t.a[i + 1] = 0.5 * (t.a[i] + t.b[i]);
    t.b[i + 1] = std::sqrt(t.a[i] * t.b[i]);
    t.c[i + 1] = 0.5 * (t.a[i] - t.b[i]);
    ++i;
  }
  t.n = i;
  return t;
}

void require_m_unit_open(double m) {
  if (!(m >= 0.0 && m < 1.0)) {
    fail_config("elliptic parameter m must lie in [0, 1)");
  }
}

// Carlson symmetric integral R_F(x, y, z).
double carlson_rf(double x, double y, double z) {
  for (;;) {
    const double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const double lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    const double mu = (x + y + z) / 3.0;
    const double dx = 1.0 - x / mu;
    const double dy = 1.0 - y / mu;
    const double dz = 1.0 - z / mu;
    const double eps =
        std::max(std::fabs(dx), std::max(std::fabs(dy), std::fabs(dz)));
    if (eps < 1e-3) {
      const double e2 = dx * dy - dz * dz;
      const double e3 = dx * dy * dz;
      return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) /
             std::sqrt(mu);
    }
  }
}

}  // namespace

double ellip_k(double m) {
  require_m_unit_open(m);
  const AgmTables t = agm_tables(m);
  return kPi / (2.0 * t.a[t.n]);
}

double ellip_e(double m) {
  if (m == 1.0) return 1.0;
  require_m_unit_open(m);
  const AgmTables t = agm_tables(m);
  double csum = 0.5 * t.c[0] * t.c[0];  // 2^{n-1} c_n^2, n = 0 term
  double pow2 = 1.0;
  for (int i = 1; i <= t.n; ++i) {
    csum += pow2 * t.c[i] * t.c[i];
    pow2 *= 2.0;
  }
  const double k_val = kPi / (2.0 * t.a[t.n]);
  return k_val * (1.0 - csum);
}

double ellip_f(double phi, double m) {
  require_m_unit_open(m);
  if (!std::isfinite(phi)) fail_config("elliptic amplitude must be finite");
  const double n_per = std::round(phi / kPi);
  const double phi_r = phi - n_per * kPi;  // in [-pi/2, pi/2]
  const double s = std::sin(phi_r);
  const double c = std::cos(phi_r);
  double f_r = 0.0;
  if (s != 0.0) {
    f_r = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
  }
  if (n_per == 0.0) return f_r;
  return 2.0 * n_per * ellip_k(m) + f_r;
}

JacobiConstants jacobi_constants(double m) {
  if (!(m >= 0.0 && m <= 1.0 - 1e-12)) {
    fail_config("jacobi constants need m in [0, 1 - 1e-12]");
  }
  const AgmTables t = agm_tables(m);
  JacobiConstants jc;
  jc.m = m;
  jc.n = t.n;
  if (t.n > 12) fail_data("AGM recursion depth exceeded the static bound");
  jc.big_k = kPi / (2.0 * t.a[t.n]);
  jc.scale = std::ldexp(t.a[t.n], t.n);
  jc.root_mc = std::sqrt(1.0 - m);
  for (int i = 1; i <= t.n; ++i) jc.ratio[i - 1] = t.c[i] / t.a[i];
  return jc;
}

JacobiSCD jacobi_eval(const JacobiConstants& jc, double u) {
  const bool neg = u < 0.0;
  const double four_k = 4.0 * jc.big_k;
  double ur = std::fmod(neg ? -u : u, four_k);
  const int q = std::min(3, static_cast<int>(ur / jc.big_k));
  const double w = ur - q * jc.big_k;

  // Descending-Landen backward recursion on the amplitude.
  double phi = jc.scale * w;
  for (int i = jc.n; i >= 1; --i) {
    const double r = std::clamp(jc.ratio[i - 1] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(r));
  }
  double sn = std::sin(phi);
  double cn = std::cos(phi);
  double dn = std::sqrt(std::max(0.0, 1.0 - jc.m * sn * sn));

  JacobiSCD out;
  switch (q) {
    case 0:
      out = {sn, cn, dn};
      break;
    case 1:
      out = {cn / dn, -jc.root_mc * sn / dn, jc.root_mc / dn};
      break;
    case 2:
      out = {-sn, -cn, dn};
      break;
    default:
      out = {-cn / dn, jc.root_mc * sn / dn, jc.root_mc / dn};
      break;
  }
  if (neg) out.sn = -out.sn;
  return out;
}

JacobiSCD jacobi_elliptic(double u, double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    fail_config("jacobi parameter m must lie in [0, 1]");
  }
  if (!std::isfinite(u)) fail_config("jacobi argument must be finite");
  if (m < 1e-14) {
    const double s = std::sin(u), c = std::cos(u);
    return {s, c, std::sqrt(1.0 - m * s * s)};
  }
  if (m > 1.0 - 1e-12) {
    const double sch = 1.0 / std::cosh(u);
    return {std::tanh(u), sch, sch};
  }
  return jacobi_eval(jacobi_constants(m), u);
}

}  // namespace kr
