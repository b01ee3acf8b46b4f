#pragma once

#include <vector>

namespace spheremix {

/// P_n(x) by the upward three-term recurrence
///   (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1},
/// stable for |x| <= 1. Throws std::domain_error if |x| > 1 + 1e-12;
/// arguments inside that slack are clamped to [-1, 1].
double legendre_eval(int n, double x);

/// All degrees 0..nmax at a fixed argument, one recurrence pass.
/// values()[n] agrees exactly with legendre_eval(n, x).
class LegendreTable {
 public:
  LegendreTable(int nmax, double x);

  double x() const { return x_; }
  int max_degree() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](int n) const { return values_[static_cast<size_t>(n)]; }
  const std::vector<double>& values() const { return values_; }

 private:
  double x_;
  std::vector<double> values_;
};

inline LegendreTable legendre_batch(int nmax, double x) {
  return LegendreTable(nmax, x);
}

/// Signed (1,1) Fourier entry of a cap indicator of geodesic radius r:
///   (P_{n-1}(cos r) - P_{n+1}(cos r)) / (2 (2n+1))
/// which equals (1/2) * integral of P_n over [cos r, 1].
/// |result| <= 1/(2n+1). Requires n >= 1 (degree 0 is the cap measure).
double cap_coefficient(int n, double r);

/// Jackson's bound: P_n(cos theta)^2 <= 2 / (pi n sin^2 theta).
/// Requires n >= 1 and theta in (0, pi).
double bound_jackson(int n, double theta);

/// Small-angle bound: P_n(cos theta)^2 <= 1 - n sin^2(theta)/4,
/// valid for n sin^2 theta <= 0.9 (enforced).
double bound_small_theta(int n, double theta);

}  // namespace spheremix
