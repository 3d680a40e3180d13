#include <initializer_list>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kr/ensemble.hpp"

TEST_SUITE_BEGIN("ensemble");

TEST_CASE("point laws return the configured values") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::Point;
  spec.beta0 = 0.37;
  spec.n0_law = kr::N0Law::Point;
  spec.n0 = -3;
  spec.atom_count = 5;
  for (long i = 0; i < spec.atom_count; ++i) {
    const kr::Atom a = kr::sample_atom(spec, i);
    CHECK(a.beta == doctest::Approx(0.37).epsilon(1e-15));
    CHECK(a.n0 == -3);
  }
  // Point beta is folded into [0, 1).
  spec.beta0 = 1.37;
  CHECK(kr::sample_atom(spec, 0).beta == doctest::Approx(0.37).epsilon(1e-12));
  spec.beta0 = -0.25;
  CHECK(kr::sample_atom(spec, 0).beta == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("every sampled beta lies in [0,1) and n0 is integral") {
  for (auto law : {kr::BetaLaw::Uniform, kr::BetaLaw::WrappedGaussian,
                   kr::BetaLaw::StratifiedUniform}) {
    kr::EnsembleSpec spec;
    spec.beta_law = law;
    spec.sigma_beta = 2.6;
    spec.n0_law = kr::N0Law::DiscreteGaussian;
    spec.sigma_n = 1.5;
    spec.atom_count = 5000;
    spec.seed = 11;
    for (long i = 0; i < spec.atom_count; ++i) {
      const kr::Atom a = kr::sample_atom(spec, i);
      CHECK(a.beta >= 0.0);
      CHECK(a.beta < 1.0);
    }
  }
}

TEST_CASE("identical (spec, seed) reproduces the identical sequence") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::Uniform;
  spec.n0_law = kr::N0Law::DiscreteGaussian;
  spec.sigma_n = 2.0;
  spec.atom_count = 200;
  spec.seed = 77;
  for (long i = 0; i < spec.atom_count; ++i) {
    const kr::Atom a = kr::sample_atom(spec, i);
    const kr::Atom b = kr::sample_atom(spec, i);
    CHECK(a.beta == b.beta);  // bitwise
    CHECK(a.n0 == b.n0);
  }
  // A different seed gives a different sequence.
  kr::EnsembleSpec other = spec;
  other.seed = 78;
  bool any_diff = false;
  for (long i = 0; i < 20; ++i) {
    if (kr::sample_atom(other, i).beta != kr::sample_atom(spec, i).beta) {
      any_diff = true;
    }
  }
  CHECK(any_diff);
}

TEST_CASE("atom draws do not depend on atom_count for unstratified laws") {
  kr::EnsembleSpec small;
  small.beta_law = kr::BetaLaw::Uniform;
  small.atom_count = 10;
  small.seed = 5;
  kr::EnsembleSpec big = small;
  big.atom_count = 10000;
  for (long i = 0; i < 10; ++i) {
    CHECK(kr::sample_atom(small, i).beta == kr::sample_atom(big, i).beta);
  }
}

TEST_CASE("stratified sampling places atom i inside stratum i") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::StratifiedUniform;
  spec.atom_count = 1000;
  spec.seed = 9;
  const double n = static_cast<double>(spec.atom_count);
  for (long i = 0; i < spec.atom_count; ++i) {
    const double b = kr::sample_atom(spec, i).beta;
    CHECK(b >= static_cast<double>(i) / n);
    CHECK(b < static_cast<double>(i + 1) / n);
  }
}

TEST_CASE("uniform laws pass a chi-square uniformity test at 1e5 samples") {
  // 100 bins, 1e5 samples: chi^2_{99} exceeds 148.2 with probability 0.1%.
  const int bins = 100;
  const long n = 100000;
  for (auto law : {kr::BetaLaw::Uniform, kr::BetaLaw::StratifiedUniform,
                   kr::BetaLaw::WrappedGaussian}) {
    kr::EnsembleSpec spec;
    spec.beta_law = law;
    spec.sigma_beta = 2.6;  // wrapped Gaussian this wide is uniform in practice
    spec.atom_count = n;
    spec.seed = 31;
    std::vector<long> count(bins, 0);
    for (long i = 0; i < n; ++i) {
      const double b = kr::sample_atom(spec, i).beta;
      int idx = static_cast<int>(b * bins);
      if (idx >= bins) idx = bins - 1;
      ++count[idx];
    }
    const double expected = static_cast<double>(n) / bins;
    double chi2 = 0.0;
    for (int j = 0; j < bins; ++j) {
      const double d = static_cast<double>(count[j]) - expected;
      chi2 += d * d / expected;
    }
    CHECK(chi2 < 148.2);
  }
}

TEST_CASE("discrete gaussian n0 law has the configured moments") {
  kr::EnsembleSpec spec;
  spec.beta_law = kr::BetaLaw::Point;
  spec.n0_law = kr::N0Law::DiscreteGaussian;
  spec.sigma_n = 3.0;
  spec.atom_count = 100000;
  spec.seed = 13;
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < spec.atom_count; ++i) {
    const double v = static_cast<double>(kr::sample_atom(spec, i).n0);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / spec.atom_count;
  const double var = sum2 / spec.atom_count - mean * mean;
  // The law rounds a centered Gaussian of width sigma_n to integers;
  // rounding adds ~1/12 to the variance.
  CHECK(std::fabs(mean) < 0.05);
  CHECK(std::fabs(var - (9.0 + 1.0 / 12.0)) < 0.25);
}

TEST_SUITE_END();
