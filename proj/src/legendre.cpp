#include "spheremix/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spheremix/geometry.hpp"

namespace spheremix {

namespace {

double checked_argument(double x) {
  if (std::abs(x) > 1.0 + 1e-12) {
    throw std::domain_error("legendre: argument outside [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

}  // namespace

double legendre_eval(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_eval: negative degree");
  x = checked_argument(x);
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = x;
  for (int m = 1; m < n; ++m) {
    const double p_next = ((2 * m + 1) * x * p - m * p_prev) / (m + 1);
    p_prev = p;
    p = p_next;
  }
  return p;
}

LegendreTable::LegendreTable(int nmax, double x) : x_(checked_argument(x)) {
  if (nmax < 0) throw std::domain_error("legendre_batch: negative degree");
  values_.resize(static_cast<size_t>(nmax) + 1);
  values_[0] = 1.0;
  if (nmax == 0) return;
  values_[1] = x_;
  for (int m = 1; m < nmax; ++m) {
    values_[static_cast<size_t>(m) + 1] =
        ((2 * m + 1) * x_ * values_[static_cast<size_t>(m)] -
         m * values_[static_cast<size_t>(m) - 1]) /
        (m + 1);
  }
}

double cap_coefficient(int n, double r) {
  if (n < 1) {
    throw std::domain_error(
        "cap_coefficient: degree 0 is the cap measure, use "
        "uniform_cap_measure");
  }
  const double c = std::cos(r);
  // Single pass up to degree n+1, snapshotting P_{n-1} along the way.
  double p_prev = 1.0;  // P_{m-1}
  double p = c;         // P_m
  double p_nm1 = 1.0;   // P_{n-1}; already correct for n == 1
  for (int m = 1; m <= n; ++m) {
    if (m == n) p_nm1 = p_prev;
    const double p_next = ((2 * m + 1) * c * p - m * p_prev) / (m + 1);
    p_prev = p;
    p = p_next;
  }
  // p now holds P_{n+1}.
  return (p_nm1 - p) / (2.0 * (2.0 * n + 1.0));
}

double bound_jackson(int n, double theta) {
  if (n < 1) throw std::domain_error("bound_jackson: degree must be >= 1");
  if (!(theta > 0.0 && theta < kPi)) {
    throw std::domain_error("bound_jackson: theta must lie in (0, pi)");
  }
  const double s = std::sin(theta);
  return 2.0 / (kPi * n * s * s);
}

double bound_small_theta(int n, double theta) {
  if (n < 1) throw std::domain_error("bound_small_theta: degree must be >= 1");
  const double s = std::sin(theta);
  const double ns2 = n * s * s;
  if (ns2 > 0.9) {
    throw std::domain_error(
        "bound_small_theta: n sin^2 theta exceeds 0.9 validity region");
  }
  return 1.0 - 0.25 * ns2;
}

}  // namespace spheremix
