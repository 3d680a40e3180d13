#pragma once

#include <vector>

namespace kr {

// Integer-order Bessel functions J_0(x) .. J_mmax(x), x >= 0, by Miller's
// downward recurrence normalized with J_0 + 2*sum_k J_2k = 1.
// Relative accuracy ~1e-14 for the x range used here (x up to ~100).
std::vector<double> bessel_j_array(double x, int m_max);

}  // namespace kr
