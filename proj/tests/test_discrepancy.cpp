#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "spheremix/discrepancy.hpp"
#include "spheremix/legendre.hpp"
#include "spheremix/rng.hpp"
#include "spheremix/spectral.hpp"

using namespace spheremix;

TEST_CASE("closed-form upper bound") {
  CHECK(upper_bound_closed(16.0) ==
        doctest::Approx(4.442 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(upper_bound_closed(0.1) == 1.0);
  CHECK(upper_bound_closed(8.0) == 1.0);  // 4.442/e ~ 1.634, clamped
  CHECK_THROWS_AS(upper_bound_closed(0.0), std::invalid_argument);
}

TEST_CASE("dominant-term lower bound") {
  CHECK(lower_bound_dominant(kPi / 2, 6) <= 1e-90);
  CHECK(lower_bound_dominant(kPi / 3, 4) ==
        doctest::Approx(std::sqrt(3.0) / 64.0).epsilon(1e-14));
  CHECK_THROWS_AS(lower_bound_dominant(1.0, 1), std::invalid_argument);
}

TEST_CASE("plancherel lower bound") {
  for (const double theta : {0.6, 1.0, 2.4}) {
    for (const int k : {2, 7}) {
      const double dom = lower_bound_dominant(theta, k);
      CHECK(std::abs(lower_bound_plancherel_at(theta, k, 1, kPi / 2) - dom) <=
            1e-12);
      // Nonnegative summands: nondecreasing in the number of terms.
      double prev = 0.0;
      for (int t = 1; t <= 12; ++t) {
        const double v = lower_bound_plancherel_at(theta, k, t, 1.1);
        CHECK(v >= prev - 1e-15);
        prev = v;
      }
      CHECK(lower_bound_plancherel(theta, k) >= dom - 1e-12);
    }
  }
  // At theta = pi/2 the dominant term dies; even terms keep the bound alive.
  CHECK(lower_bound_plancherel_at(kPi / 2, 4, 1, kPi / 2) <= 1e-60);
  CHECK(lower_bound_plancherel_at(kPi / 2, 4, 2, kPi / 3) > 0.0);
  CHECK(lower_bound_plancherel(kPi / 2, 4) > 0.0);
}

TEST_CASE("series upper bound") {
  // theta = pi/2, k = 4: only even degrees survive; P_2(0)^4 = 1/16 leads.
  const double up = upper_bound_series(kPi / 2, 4);
  CHECK(up >= 1.0 / 16.0);
  CHECK(up <= 0.3);

  // At k = ceil(8/sin^2 theta) the closed form dominates the series bound.
  for (const double theta : {0.6, 1.0, kPi / 2, 2.0}) {
    const double s2 = std::sin(theta) * std::sin(theta);
    const int k = static_cast<int>(std::ceil(8.0 / s2));
    CHECK(upper_bound_series(theta, k) <= 4.442 * std::exp(-k * s2 / 8.0));
    CHECK(upper_bound_series(theta, k) <= 4.442 * std::exp(-1.0));
  }
}

TEST_CASE("exact discrepancy basics") {
  CHECK_THROWS_AS(exact_discrepancy(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(exact_discrepancy(1.0, 5, GridSpec{1, 8}),
                  std::invalid_argument);

  const DiscrepancyResult r = exact_discrepancy(1.0, 6, GridSpec{96, 96});
  CHECK(r.method == DiscrepancyMethod::exact_spectral);
  CHECK(r.value >= 0.0);
  CHECK(r.value <= 1.0 + r.uncertainty);
  CHECK(r.uncertainty == r.tail_bound + r.grid_gap);
  CHECK(r.value >= lower_bound_dominant(1.0, 6) - r.uncertainty);
  CHECK(r.value <= upper_bound_series(1.0, 6) + 1e-9);
}

TEST_CASE("exact discrepancy is deterministic and exec-independent") {
  const DiscrepancyResult a = exact_discrepancy(0.9, 7, GridSpec{128, 128});
  const DiscrepancyResult b = exact_discrepancy(0.9, 7, GridSpec{128, 128});
  const DiscrepancyResult c =
      exact_discrepancy(0.9, 7, GridSpec{128, 128}, true, Exec::serial);
  CHECK(a.value == b.value);
  CHECK(a.value == c.value);
  CHECK(a.argmax_gamma == c.argmax_gamma);
  CHECK(a.argmax_r == c.argmax_r);
  CHECK(a.uncertainty == c.uncertainty);
}

TEST_CASE("refinement only improves the grid value") {
  const DiscrepancyResult coarse =
      exact_discrepancy(1.3, 6, GridSpec{64, 64}, false);
  const DiscrepancyResult refined =
      exact_discrepancy(1.3, 6, GridSpec{64, 64}, true);
  CHECK(refined.value >= coarse.value);
  // A much finer grid cannot beat the refined value by more than its gap.
  const DiscrepancyResult fine =
      exact_discrepancy(1.3, 6, GridSpec{512, 512}, false);
  CHECK(fine.value <= refined.value + refined.grid_gap);
}

TEST_CASE("odd-k walk at theta = pi/2 keeps only even degrees") {
  // Survives because P_n(cos pi/2)^k is ~1e-49 for odd n: the exact value
  // must coincide with the hand-built even-degree evaluation at the argmax.
  const DiscrepancyResult r = exact_discrepancy(kPi / 2, 3, GridSpec{128, 128});
  double even_only = 0.0;
  const double ct = std::cos(kPi / 2);
  for (int n = 2; n <= 400; n += 2) {
    even_only += (2.0 * n + 1.0) * std::pow(legendre_eval(n, ct), 3) *
                 cap_coefficient(n, r.argmax_r) *
                 legendre_eval(n, std::cos(r.argmax_gamma));
  }
  CHECK(std::abs(std::abs(even_only) - r.value) <= r.tail_bound + 1e-12);
}

namespace {

SampleSet uniform_samples(int64_t m, uint64_t seed) {
  SampleSet s;
  s.config.theta = 1.0;
  s.config.k = -1;  // synthetic: not produced by run_walk
  s.config.m = m;
  s.config.seed = seed;
  s.cos_polar.resize(static_cast<size_t>(m));
  s.endpoints.resize(static_cast<size_t>(m));
  SplitStream rng(seed, 0);
  for (int64_t i = 0; i < m; ++i) {
    const double z = 2.0 * rng.next_unit() - 1.0;
    const double phi = rng.next_angle();
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    s.endpoints[static_cast<size_t>(i)] =
        UnitVec3{rho * std::cos(phi), rho * std::sin(phi), z};
    s.cos_polar[static_cast<size_t>(i)] = z;
  }
  return s;
}

}  // namespace

TEST_CASE("empirical discrepancy of uniform samples is within its noise") {
  const SampleSet uniform = uniform_samples(100000, 63);
  const DiscrepancyResult r = empirical_discrepancy(uniform);
  CHECK(r.method == DiscrepancyMethod::empirical);
  CHECK(r.value <= r.uncertainty);
}

TEST_CASE("empirical discrepancy of a point mass is ~1") {
  WalkConfig cfg;
  cfg.theta = 1.0;
  cfg.k = 0;
  cfg.m = 2000;
  cfg.seed = 1;
  const DiscrepancyResult r = empirical_discrepancy(run_walk(cfg), 128, 256);
  CHECK(r.value >= 0.99);
}

TEST_CASE("empirical discrepancy needs enough samples and full points") {
  WalkConfig cfg;
  cfg.theta = 1.0;
  cfg.k = 2;
  cfg.m = 100;
  cfg.seed = 1;
  CHECK_THROWS_AS(empirical_discrepancy(run_walk(cfg)), std::invalid_argument);
}

TEST_CASE("empirical agrees with exact") {
  WalkConfig cfg;
  cfg.theta = 1.0;
  cfg.k = 6;
  cfg.formulation = Formulation::drunkard;
  cfg.seed = 97;
  cfg.m = 100000;
  const DiscrepancyResult emp = empirical_discrepancy(run_walk(cfg));
  const DiscrepancyResult ex = exact_discrepancy(1.0, 6);
  CHECK(std::abs(emp.value - ex.value) <= emp.uncertainty + ex.uncertainty);
}

TEST_CASE("two-step walk at theta = pi/2: spectral vs large-sample sweep") {
  WalkConfig cfg;
  cfg.theta = kPi / 2;
  cfg.k = 2;
  cfg.formulation = Formulation::potted_plant;
  cfg.seed = 98;
  cfg.m = 1000000;
  const DiscrepancyResult emp =
      empirical_discrepancy(run_walk(cfg), 256, 128);
  const DiscrepancyResult ex = exact_discrepancy(kPi / 2, 2);
  CHECK(std::abs(emp.value - ex.value) <=
        3.0 * (emp.uncertainty + ex.uncertainty));
}

TEST_CASE("monotonicity in k within combined uncertainty") {
  for (const double theta : {1.0, 2.2}) {
    DiscrepancyResult prev = exact_discrepancy(theta, 2, GridSpec{128, 128});
    for (int k = 3; k <= 12; ++k) {
      const DiscrepancyResult cur =
          exact_discrepancy(theta, k, GridSpec{128, 128});
      CHECK(cur.value <= prev.value + prev.uncertainty + cur.uncertainty);
      prev = cur;
    }
  }
}

TEST_CASE("bound report wiring") {
  const BoundReport rep = make_bound_report(kPi / 2, 16);
  CHECK(rep.C == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(rep.upper_closed ==
        doctest::Approx(4.442 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(rep.lower_dominant <= 1e-200);
  CHECK(rep.lower_plancherel >= rep.lower_dominant - 1e-12);
  CHECK(rep.lower_plancherel > 0.0);

  const BoundReport rep2 = make_bound_report(kPi / 3, 2);
  CHECK(rep2.lower_dominant ==
        doctest::Approx(std::sqrt(3.0) / 16.0).epsilon(1e-14));
}
