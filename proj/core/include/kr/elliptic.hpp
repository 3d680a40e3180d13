#pragma once

namespace kr {

// Complete elliptic integral of the first kind K(m), parameter m in [0, 1).
double ellip_k(double m);

// Complete elliptic integral of the second kind E(m), m in [0, 1].
double ellip_e(double m);

// Incomplete elliptic integral of the first kind F(phi | m), m in [0, 1),
// any real phi (reduced modulo pi against 2K).
double ellip_f(double phi, double m);

struct JacobiSCD {
  double sn;
  double cn;
  double dn;
};

// Precomputed AGM data for repeated sn/cn/dn evaluation at fixed m.
// Valid for m in [0, 1 - 1e-12]; nearer 1 use the hyperbolic limit.
struct JacobiConstants {
  double m = 0.0;
  double big_k = 0.0;    // quarter period K(m)
  double scale = 0.0;    // 2^n * a_n
  double root_mc = 1.0;  // sqrt(1 - m)
  int n = 0;
  double ratio[12] = {};  // c_i / a_i for i = 1..n
};

JacobiConstants jacobi_constants(double m);
JacobiSCD jacobi_eval(const JacobiConstants& jc, double u);

// Jacobi elliptic functions sn/cn/dn(u | m) for any real u, m in [0, 1].
// Uses the AGM descending-Landen recursion with quadrant reduction; the
// m -> 0 (trigonometric) and m -> 1 (hyperbolic) limits are handled exactly.
JacobiSCD jacobi_elliptic(double u, double m);

}  // namespace kr
