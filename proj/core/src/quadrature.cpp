#include "kr/quadrature.hpp"

#include <cmath>

#include "kr/constants.hpp"
#include "kr/errors.hpp"

namespace kr {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) fail_data("quadrature order must be >= 1");
  GaussLegendre rule;
  rule.x.assign(static_cast<size_t>(n), 0.0);
  rule.w.assign(static_cast<size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev guess for the i-th root of P_n, then Newton.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    rule.x[static_cast<size_t>(i)] = -z;
    rule.x[static_cast<size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[static_cast<size_t>(i)] = w;
    rule.w[static_cast<size_t>(n - 1 - i)] = w;
  }
  return rule;
}

void append_mapped_rule(const GaussLegendre& rule, double a, double b,
                        std::vector<double>& xs, std::vector<double>& ws) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  for (size_t i = 0; i < rule.x.size(); ++i) {
    xs.push_back(mid + hw * rule.x[i]);
    ws.push_back(hw * rule.w[i]);
  }
}

}  // namespace kr
