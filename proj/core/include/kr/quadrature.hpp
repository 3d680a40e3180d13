#pragma once

#include <vector>

namespace kr {

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n
// from the Chebyshev initial guess. Accuracy ~1e-15.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

GaussLegendre gauss_legendre(int n);

// Appends the rule mapped onto [a, b] to (xs, ws).
void append_mapped_rule(const GaussLegendre& rule, double a, double b,
                        std::vector<double>& xs, std::vector<double>& ws);

}  // namespace kr
