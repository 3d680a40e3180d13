#include "kr/sine_integral.hpp"

#include <cmath>
#include <complex>

#include "kr/constants.hpp"
#include "kr/errors.hpp"

namespace kr {

namespace {

double si_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 0; n < 80; ++n) {
    const double k = 2.0 * n + 1.0;
    term *= -x2 * k / ((k + 2.0) * (k + 2.0) * (k + 1.0));
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

// Modified Lentz evaluation of the continued fraction for E1(z),
//   E1(z) = exp(-z) / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...)))
// at z = i x; then Si(x) = pi/2 + Im E1(ix).
double si_continued_fraction(double x) {
  const std::complex<double> z(0.0, x);
  constexpr double tiny = 1e-290;
  std::complex<double> f = z + 1.0;
  if (std::abs(f) == 0.0) f = tiny;
  std::complex<double> c = f;
  std::complex<double> d = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const std::complex<double> a(-static_cast<double>(j) * j, 0.0);
    const std::complex<double> b = z + (2.0 * j + 1.0);
    d = b + a * d;
    if (std::abs(d) == 0.0) d = tiny;
    c = b + a / c;
    if (std::abs(c) == 0.0) c = tiny;
    d = 1.0 / d;
    const std::complex<double> delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const std::complex<double> e1 = std::exp(-z) / f;
  return 0.5 * kPi + e1.imag();
}

}  // namespace

double sine_integral(double x) {
  if (!std::isfinite(x)) fail_config("sine integral needs a finite argument");
  const double ax = std::fabs(x);
  double v;
  if (ax <= 12.0) {
    v = si_series(ax);
  } else {
    v = si_continued_fraction(ax);
  }
  return x < 0.0 ? -v : v;
}

}  // namespace kr
