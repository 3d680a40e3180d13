#include "kr/bessel.hpp"

#include <cmath>

#include "kr/errors.hpp"

namespace kr {

std::vector<double> bessel_j_array(double x, int m_max) {
  if (m_max < 0) fail_data("bessel order must be non-negative");
  if (!(x >= 0.0)) fail_data("bessel argument must be non-negative");

  std::vector<double> out(static_cast<size_t>(m_max) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }

  // Start the downward recurrence well above both m_max and x.
  int m_start = m_max + 20 + static_cast<int>(std::ceil(1.2 * x));
  if (m_start % 2 != 0) ++m_start;

  double jp1 = 0.0;       // J_{m+1} (unnormalized)
  double j = 1e-30;       // J_m
  double even_sum = 0.0;  // J_0 + 2*sum J_2k
  for (int m = m_start; m >= 1; --m) {
    double jm1 = (2.0 * m / x) * j - jp1;
    jp1 = j;
    j = jm1;
    if (m - 1 <= m_max) out[static_cast<size_t>(m - 1)] = j;
    if ((m - 1) % 2 == 0) even_sum += (m - 1 == 0) ? j : 2.0 * j;
    if (std::fabs(j) > 1e250) {  // rescale to avoid overflow
      const double scale = 1e-250;
      j *= scale;
      jp1 *= scale;
      even_sum *= scale;
      for (auto& v : out) v *= scale;
    }
  }
  for (auto& v : out) v /= even_sum;
  return out;
}

}  // namespace kr
