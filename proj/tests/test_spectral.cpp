#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "spheremix/geometry.hpp"
#include "spheremix/legendre.hpp"
#include "spheremix/spectral.hpp"
#include "spheremix/walk.hpp"

using namespace spheremix;

TEST_CASE("walk coefficient") {
  for (const double theta : {0.3, 1.0, 2.5}) {
    for (const int k : {0, 1, 4, 9}) {
      CHECK(walk_coefficient(theta, k, 0) == 1.0);
    }
    for (int n = 0; n <= 8; ++n) {
      CHECK(walk_coefficient(theta, 1, n) ==
            doctest::Approx(legendre_eval(n, std::cos(theta))).epsilon(1e-15));
    }
  }
  for (const int k : {1, 3, 8}) {
    CHECK(std::abs(walk_coefficient(kPi / 2, k, 1)) <= 1e-12);
  }
  CHECK_THROWS_AS(walk_coefficient(0.0, 2, 1), std::invalid_argument);
}

TEST_CASE("monotone damping in k") {
  for (const double theta : {0.4, 1.3, 2.8}) {
    for (int n = 1; n <= 10; ++n) {
      for (int k = 0; k <= 12; ++k) {
        CHECK(std::abs(walk_coefficient(theta, k + 1, n)) <=
              std::abs(walk_coefficient(theta, k, n)) + 1e-18);
      }
    }
  }
}

TEST_CASE("walk spectrum invariants") {
  const WalkSpectrum s = make_walk_spectrum(0.8, 5, 300);
  CHECK(s.lambda[0] == 1.0);
  for (const double l : s.lambda) CHECK(std::abs(l) <= 1.0 + 1e-12);
}

TEST_CASE("certified truncation") {
  const Truncation t = truncation_for(kPi / 2, 10, 1e-8);
  CHECK(t.tail_bound <= 1e-8);
  CHECK(t.cutoff >= 1);

  // Direct-summation oracle for the discarded Jackson envelope:
  // sum_{n > N} (2/(pi n))^5 must lie below the certified bound.
  double direct = 0.0;
  for (int n = 2000000; n > t.cutoff; --n) {
    direct += std::pow(2.0 / (kPi * n), 5.0);
  }
  CHECK(direct <= t.tail_bound);

  // Tighter epsilon can only push the cutoff up.
  CHECK(truncation_for(kPi / 2, 10, 1e-9).cutoff >= t.cutoff);

  // Halving sin^2 theta roughly doubles the cutoff.
  const double s2a = 0.9, s2b = 0.45;
  const Truncation ta = truncation_for(std::asin(std::sqrt(s2a)), 12, 1e-10);
  const Truncation tb = truncation_for(std::asin(std::sqrt(s2b)), 12, 1e-10);
  const double ratio = static_cast<double>(tb.cutoff) / ta.cutoff;
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 3.0);

  // k = 4 decays too slowly for 1e-9 within the cutoff cap.
  CHECK_THROWS_AS(truncation_for(kPi / 2, 4, 1e-9), truncation_error);
  CHECK_THROWS_AS(truncation_for(1.0, 3, 1e-6), std::invalid_argument);
}

TEST_CASE("series plan fallbacks") {
  const SeriesPlan direct = plan_series(1.0, 2, 1e-9, false);
  CHECK_FALSE(direct.certified);
  CHECK(direct.cutoff >= 10000);

  const SeriesPlan relaxed = plan_series(kPi / 2, 4, 1e-9, true);
  CHECK(relaxed.certified);
  CHECK(relaxed.cutoff <= 1000000);
  CHECK(relaxed.tail_bound <= 1e-4);
  CHECK(relaxed.tail_bound == certified_tail(kPi / 2, 4, relaxed.cutoff));

  CHECK_THROWS_AS(plan_series(kPi / 2, 4, 1e-9, false), truncation_error);
}

TEST_CASE("cap probability degenerate caps are exact") {
  // 1e-6 keeps the certified truncation feasible at k = 5 for small
  // sin^2 theta; exactness at r in {0, pi} holds for any epsilon.
  for (const double theta : {0.6, kPi / 2, 2.1}) {
    for (const int k : {2, 3, 5, 12}) {
      for (const double gamma : {0.0, 1.1, kPi}) {
        CHECK(cap_probability(theta, k, gamma, kPi, 1e-6).value == 1.0);
        CHECK(cap_probability(theta, k, gamma, 0.0, 1e-6).value == 0.0);
      }
    }
  }
  CHECK_THROWS_AS(cap_probability(1.0, 1, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("hemisphere probability at theta = pi/2 collapses to 1/2") {
  const CapProbability p = cap_probability(kPi / 2, 2, 0.0, kPi / 2, 1e-10);
  CHECK(std::abs(p.value - 0.5) <= 1e-14);
}

namespace {

double mc_cap_frequency(double theta, int k, double gamma, double r,
                        int64_t m, uint64_t seed) {
  WalkConfig cfg;
  cfg.theta = theta;
  cfg.k = k;
  cfg.formulation = Formulation::drunkard;
  cfg.seed = seed;
  cfg.m = m;
  const SampleSet s = run_walk(cfg);
  const UnitVec3 center{std::sin(gamma), 0.0, std::cos(gamma)};
  const double cr = std::cos(r);
  int64_t count = 0;
  for (const UnitVec3& e : s.endpoints) {
    if (dot(center, e) >= cr) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(m);
}

}  // namespace

TEST_CASE("cap probability against Monte Carlo") {
  const int64_t m = 1000000;

  {
    const double p = cap_probability(kPi / 2, 2, 0.0, kPi / 2, 1e-10).value;
    const double emp = mc_cap_frequency(kPi / 2, 2, 0.0, kPi / 2, m, 101);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(m));
    CHECK(std::abs(emp - p) <= 3.0 * sigma);
  }
  {
    const double p = cap_probability(1.0, 5, 0.7, 0.9, 1e-9).value;
    const double emp = mc_cap_frequency(1.0, 5, 0.7, 0.9, m, 202);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(m));
    CHECK(std::abs(emp - p) <= 3.0 * sigma);
  }
}

TEST_CASE("cap probability range and complement additivity") {
  for (const double theta : {0.7, 1.9}) {
    for (const int k : {2, 5}) {
      for (int i = 0; i <= 6; ++i) {
        for (int j = 0; j <= 6; ++j) {
          const double gamma = kPi * i / 6.0;
          const double r = kPi * j / 6.0;
          const CapProbability p = cap_probability(theta, k, gamma, r, 1e-6);
          CHECK(p.value >= -p.tail_bound);
          CHECK(p.value <= 1.0 + p.tail_bound);
          const CapProbability q =
              cap_probability(theta, k, kPi - gamma, kPi - r, 1e-6);
          CHECK(std::abs(p.value + q.value - 1.0) <=
                2.0 * std::max(p.tail_bound, q.tail_bound) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("spectral moment equals simulator mean") {
  for (const double theta : {1.0}) {
    CHECK(moment(theta, 8, 1) ==
          doctest::Approx(std::pow(std::cos(theta), 8)).epsilon(1e-15));
    CHECK(std::abs(moment(kPi / 2, 5, 1)) <= 1e-12);

    WalkConfig cfg;
    cfg.theta = theta;
    cfg.k = 8;
    cfg.formulation = Formulation::rotate_spin;
    cfg.seed = 303;
    cfg.m = 100000;
    const SampleSet s = run_walk(cfg);
    const double tol = 4.0 / std::sqrt(static_cast<double>(cfg.m));
    CHECK(std::abs(empirical_moment(s, 3) - moment(theta, 8, 3)) <= tol);
  }
}
