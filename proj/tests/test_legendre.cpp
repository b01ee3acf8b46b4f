#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spheremix/geometry.hpp"
#include "spheremix/legendre.hpp"
#include "spheremix/quadrature.hpp"
#include "spheremix/rng.hpp"

using namespace spheremix;

TEST_CASE("known point values") {
  CHECK(legendre_eval(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(legendre_eval(3, 0.2) == doctest::Approx(-0.28).epsilon(1e-14));
  for (int n = 0; n <= 50; ++n) {
    CHECK(legendre_eval(n, 1.0) == 1.0);
  }
  CHECK_THROWS_AS(legendre_eval(3, 1.0 + 1e-9), std::domain_error);
  CHECK_THROWS_AS(legendre_eval(-1, 0.0), std::domain_error);
}

TEST_CASE("recurrence matches the explicit-coefficient expansion") {
  SplitStream rng(23, 0);
  for (int i = 0; i < 1000; ++i) {
    const double x = 2.0 * rng.next_unit() - 1.0;
    for (int n = 0; n <= 10; ++n) {
      CHECK(std::abs(legendre_eval(n, x) - oracles::legendre_explicit(n, x)) <=
            1e-12);
    }
  }
  CHECK(std::abs(legendre_eval(7, 0.3) - oracles::legendre_explicit(7, 0.3)) <=
        1e-12);
}

TEST_CASE("batch table") {
  const LegendreTable t(3, 0.0);
  CHECK(t[0] == 1.0);
  CHECK(t[1] == 0.0);
  CHECK(t[2] == -0.5);
  CHECK(t[3] == 0.0);

  const LegendreTable t1(1, 0.37);
  CHECK(t1[0] == 1.0);
  CHECK(t1[1] == 0.37);

  const LegendreTable big(200, 0.9);
  for (int n = 0; n <= 200; ++n) {
    CHECK(std::abs(big[n]) <= 1.0 + 1e-12);
    CHECK(big[n] == legendre_eval(n, 0.9));
  }
}

TEST_CASE("boundedness |P_n| <= 1 on [-1, 1]") {
  SplitStream rng(29, 0);
  for (int i = 0; i < 64; ++i) {
    const double x = 2.0 * rng.next_unit() - 1.0;
    const LegendreTable t(500, x);
    for (int n = 0; n <= 500; ++n) {
      CHECK(std::abs(t[n]) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("cap coefficient values and integral identity") {
  CHECK(cap_coefficient(1, kPi / 2) == doctest::Approx(0.25).epsilon(1e-15));
  for (int n = 1; n <= 20; ++n) {
    CHECK(cap_coefficient(n, 0.0) == 0.0);
    CHECK(cap_coefficient(n, kPi) == 0.0);
    CHECK(std::abs(cap_coefficient(n, 0.77)) <= 1.0 / (2.0 * n + 1.0));
  }
  CHECK_THROWS_AS(cap_coefficient(0, 1.0), std::domain_error);

  // Quadrature of (1/2) * integral_{cos r}^{1} P_n against the closed form.
  for (int n = 1; n <= 20; ++n) {
    for (int j = 0; j < 16; ++j) {
      const double r = kPi * (j + 0.5) / 16.0;
      const double quad = 0.5 * adaptive_simpson(
          [n](double x) { return legendre_eval(n, x); }, std::cos(r), 1.0,
          1e-12);
      CHECK(std::abs(quad - cap_coefficient(n, r)) <= 1e-10);
    }
  }
}

TEST_CASE("degree-2 cap coefficient peaks at cos r = 1/sqrt(3)") {
  // Grid-scan oracle over cos r.
  double best = -1.0, best_c = 0.0;
  for (int t = 0; t <= 200000; ++t) {
    const double c = -1.0 + 2.0 * t / 200000.0;
    const double v = cap_coefficient(2, std::acos(c));
    if (v > best) {
      best = v;
      best_c = c;
    }
  }
  const double c_star = 1.0 / std::sqrt(3.0);
  CHECK(best_c == doctest::Approx(c_star).epsilon(1e-4));
  CHECK(best ==
        doctest::Approx(c_star * (1.0 - c_star * c_star) / 4.0).epsilon(1e-8));
}

TEST_CASE("generating function at r = 1/2") {
  for (int t = 0; t < 33; ++t) {
    const double x = -1.0 + 2.0 * t / 32.0;
    const LegendreTable table(200, x);
    double sum = 0.0;
    for (int n = 200; n >= 0; --n) sum += table[n] * std::pow(0.5, n);
    CHECK(std::abs(sum - 1.0 / std::sqrt(1.25 - x)) <= 1e-10);
  }
}

TEST_CASE("jackson bound") {
  CHECK(bound_jackson(1, kPi / 2) == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(legendre_eval(1, std::cos(kPi / 2)) *
            legendre_eval(1, std::cos(kPi / 2)) <=
        bound_jackson(1, kPi / 2));
  CHECK(bound_jackson(100, 0.1) ==
        doctest::Approx(2.0 / (kPi * 100.0 * std::sin(0.1) * std::sin(0.1)))
            .epsilon(1e-15));
  CHECK_THROWS_AS(bound_jackson(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(bound_jackson(1, kPi), std::domain_error);
  CHECK_THROWS_AS(bound_jackson(0, 1.0), std::domain_error);

  for (int t = 0; t < 64; ++t) {
    const double theta = kPi * (t + 0.5) / 64.0;
    const LegendreTable table(300, std::cos(theta));
    for (int n = 1; n <= 300; ++n) {
      CHECK(table[n] * table[n] <= bound_jackson(n, theta));
    }
  }
}

TEST_CASE("small-theta bound") {
  const double theta_half = std::asin(std::sqrt(0.5));
  CHECK(bound_small_theta(1, theta_half) ==
        doctest::Approx(0.875).epsilon(1e-15));
  CHECK(std::cos(theta_half) * std::cos(theta_half) <= 0.875);

  // Boundary of the stated validity region.
  const double theta9 = std::asin(std::sqrt(0.9 / 4.0));
  CHECK(bound_small_theta(4, theta9) == doctest::Approx(0.775).epsilon(1e-12));
  CHECK_THROWS_AS(bound_small_theta(5, theta9), std::domain_error);

  for (int t = 0; t < 64; ++t) {
    const double theta = kPi * (t + 0.5) / 64.0;
    const double s2 = std::sin(theta) * std::sin(theta);
    const LegendreTable table(300, std::cos(theta));
    for (int n = 1; n <= 300; ++n) {
      if (n * s2 <= 0.9) {
        CHECK(table[n] * table[n] <= bound_small_theta(n, theta));
      }
    }
  }
}
