#include "kr/gfunction.hpp"

#include <cmath>

#include "kr/constants.hpp"
#include "kr/errors.hpp"
#include "kr/parallel.hpp"
#include "kr/quadrature.hpp"
#include "kr/sine_integral.hpp"

namespace kr {

namespace {

constexpr double kEdgeEps = 1e-13;   // panels narrower than this are dropped
constexpr double kSepSkip = 1e-9;    // degenerate separatrix gap threshold

}  // namespace

GQuadrature::GQuadrature(const GQuadratureSpec& spec) {
  if (spec.theta_nodes < 2 || (spec.theta_nodes & 1) != 0) {
    fail_config("theta_nodes must be an even number >= 2");
  }
  if (spec.panel_nodes < 2 || spec.grading_levels < 0) {
    fail_config("panel_nodes must be >= 2 and grading_levels >= 0");
  }
  const GaussLegendre gth = gauss_legendre(spec.theta_nodes);
  const GaussLegendre gpn = gauss_legendre(spec.panel_nodes);

  std::vector<double> jxs, jws;
  const auto add_panel = [&](double a, double b) {
    if (b - a < kEdgeEps) return;
    append_mapped_rule(gpn, a, b, jxs, jws);
  };
  const auto add_graded = [&](double a, double b, bool toward_a) {
    std::vector<double> edges;
    edges.push_back(a);
    const double width = b - a;
    if (width >= kEdgeEps) {
      if (toward_a) {
        for (int l = spec.grading_levels; l >= 1; --l) {
          edges.push_back(a + std::ldexp(width, -l));
        }
      } else {
        for (int l = 1; l <= spec.grading_levels; ++l) {
          edges.push_back(b - std::ldexp(width, -l));
        }
      }
    }
    edges.push_back(b);
    for (std::size_t i = 1; i < edges.size(); ++i) {
      add_panel(edges[i - 1], edges[i]);
    }
  };

  // The integrand is invariant under (theta, J) -> (2 pi - theta, -J) and
  // the rule is symmetric under it, so only theta < pi is evaluated, at
  // double weight.
  for (int it = 0; it < spec.theta_nodes / 2; ++it) {
    const double theta = kPi * (gth.x[it] + 1.0);
    const double wth = 2.0 * kPi * gth.w[it];
    const double js = 2.0 * std::fabs(std::sin(0.5 * theta));

    jxs.clear();
    jws.clear();
    if (js > kSepSkip) {
      add_graded(-js, 0.0, true);
      add_graded(0.0, js, false);
      if (2.0 - js > kSepSkip) {
        add_graded(js, 2.0, true);
        add_graded(-2.0, -js, false);
      }
    } else {
      add_panel(-2.0, 0.0);
      add_panel(0.0, 2.0);
    }

    for (std::size_t i = 0; i < jxs.size(); ++i) {
      Node nd;
      nd.orbit = pendulum_orbit(theta, jxs[i]);
      nd.weight = wth * jws[i];
      if (nd.orbit.kind == PendulumOrbit::Kind::Trapped ||
          nd.orbit.kind == PendulumOrbit::Kind::Rotating) {
        nd.jc = jacobi_constants(nd.orbit.m);
      }
      nodes_.push_back(nd);
    }
  }
}

double GQuadrature::operator()(double x) const {
  if (!std::isfinite(x)) fail_config("G argument must be finite");
  double sum = 0.0, comp = 0.0;
  for (const Node& nd : nodes_) {
    double jp = 0.0;
    switch (nd.orbit.kind) {
      case PendulumOrbit::Kind::Center:
        jp = 0.0;
        break;
      case PendulumOrbit::Kind::Separatrix:
        jp = (nd.orbit.sigma == 0.0)
                 ? 0.0
                 : 2.0 * nd.orbit.sigma / std::cosh(x + nd.orbit.u0);
        break;
      case PendulumOrbit::Kind::Trapped:
        jp = 2.0 * nd.orbit.kappa * jacobi_eval(nd.jc, x + nd.orbit.u0).cn;
        break;
      default:
        jp = nd.orbit.sigma * 2.0 * nd.orbit.kappa *
             jacobi_eval(nd.jc, nd.orbit.kappa * x + nd.orbit.u0).dn;
        break;
    }
    const double d = jp - nd.orbit.jprime0;
    const double term = nd.weight * d * d;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum / (8.0 * kPi);
}

double GTable::at(double x) const {
  const long n = static_cast<long>(g.size());
  if (n == 0) fail_data("empty G table");
  if (n == 1) {
    if (std::fabs(x - x0) > 1e-9) fail_config("x outside the tabulated range");
    return g[0];
  }
  const double xe = x0 + dx * static_cast<double>(n - 1);
  if (x < x0 - 1e-9 || x > xe + 1e-9) {
    fail_config("x outside the tabulated range");
  }
  double s = (x - x0) / dx;
  if (s < 0.0) s = 0.0;
  if (s > static_cast<double>(n - 1)) s = static_cast<double>(n - 1);
  long i = static_cast<long>(s);
  if (i > n - 2) i = n - 2;
  const double f = s - static_cast<double>(i);
  return g[i] * (1.0 - f) + g[i + 1] * f;
}

GTable build_gtable(double x0, double x1, double dx,
                    const GQuadratureSpec& spec, int threads) {
  if (!(dx > 0.0) || !(x1 >= x0) || !(x0 >= 0.0)) {
    fail_config("G table needs 0 <= x0 <= x1 and dx > 0");
  }
  if (threads <= 0) threads = default_thread_count();
  const long n = static_cast<long>(std::floor((x1 - x0) / dx + 0.5)) + 1;
  const GQuadrature quad(spec);
  GTable table;
  table.x0 = x0;
  table.dx = dx;
  table.g.assign(n, 0.0);
  parallel_for(n, threads, [&](long i) {
    table.g[i] = quad(x0 + dx * static_cast<double>(i));
  });
  return table;
}

double pendulum_ratio(double x, double g) {
  if (!(x >= 0.0)) fail_config("scaled time x must be >= 0");
  if (x == 0.0) return 0.0;
  return 4.0 * g / (kPi * x);
}

double background_ratio(double x) {
  if (!(x >= 0.0)) fail_config("scaled time x must be >= 0");
  if (x == 0.0) return 1.0;
  const double s = std::sin(x);
  return 1.0 - (2.0 / kPi) * sine_integral(2.0 * x) +
         2.0 * s * s / (kPi * x);
}

double energy_ratio(double x, double g) {
  return background_ratio(x) + pendulum_ratio(x, g);
}

}  // namespace kr
