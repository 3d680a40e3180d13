#pragma once

namespace kr {

// Si(x) = integral of sin(t)/t from 0 to x, for any real x.
// Power series for |x| <= 12, continued fraction for E1(ix) above.
double sine_integral(double x);

}  // namespace kr
