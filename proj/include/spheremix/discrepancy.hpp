#pragma once

#include <string>

#include "spheremix/exec.hpp"
#include "spheremix/walk.hpp"

namespace spheremix {

enum class DiscrepancyMethod { exact_spectral, empirical, bound };

const char* discrepancy_method_name(DiscrepancyMethod m);

/// A value of D(k) together with the cap that attains it and a bound on the
/// error of the estimate. For the spectral method the uncertainty splits as
/// uncertainty = tail_bound + grid_gap.
struct DiscrepancyResult {
  double value = 0.0;
  double argmax_gamma = 0.0;  // polar angle of the maximizing cap center
  double argmax_r = 0.0;      // geodesic radius of the maximizing cap
  double uncertainty = 0.0;
  double tail_bound = 0.0;
  double grid_gap = 0.0;
  DiscrepancyMethod method = DiscrepancyMethod::exact_spectral;
};

struct BoundReport {
  double theta = 0.0;
  int k = 0;
  double C = 0.0;  // k sin^2 theta
  double upper_series = 0.0;
  double upper_closed = 0.0;
  double lower_dominant = 0.0;
  double lower_plancherel = 0.0;
};

struct GridSpec {
  int n_gamma = 256;
  int n_r = 256;
};

/// Exact spectral discrepancy: the deviation series
///   f(gamma, r) = sum_{n>=1} (2n+1) P_n(cos theta)^k cap_coefficient(n, r)
///                 P_n(cos gamma)
/// maximized in absolute value over (gamma, r) in [0, pi]^2. Grid scan plus
/// (optionally) coordinate-wise golden-section refinement of the best cell
/// to relative size 1e-6. The grid gap term of the uncertainty comes from
/// the Lipschitz estimate L = sum (2n+1)^2 |lambda_n|^k sup|dhat_n| times
/// the cell diagonal. Requires k >= 2.
DiscrepancyResult exact_discrepancy(double theta, int k, GridSpec grid = {},
                                    bool refine = true,
                                    Exec exec = Exec::parallel);

/// Direct estimator of the discrepancy of a sample: centers on a Fibonacci
/// lattice (plus both poles), one sorted dot-product pass per center, caps
/// of n_radii uniformly spaced radii. Uncertainty is the union-bound
/// concentration term at significance 0.001. Requires m >= 1000.
DiscrepancyResult empirical_discrepancy(const SampleSet& samples,
                                        int n_centers = 512, int n_radii = 256,
                                        Exec exec = Exec::parallel);

/// sum_{n<=N} |P_n(cos theta)|^k plus the certified tail (k >= 4) or the
/// last-decade estimate (k in {2,3}). An upper bound for D(k).
double upper_bound_series(double theta, int k);

/// min(1, 4.442 e^{-C/8}); the discrepancy never exceeds 1.
double upper_bound_closed(double C);

/// (sqrt(3)/4) |cos theta|^k, the dominant-term lower bound. Requires k >= 2.
double lower_bound_dominant(double theta, int k);

/// sqrt( sum_{n=1}^{n_terms} (2n+1) [P_n(cos theta)^k cap_coefficient(n,r)]^2 )
/// at a fixed radius r. Every summand is nonnegative, so any truncation is
/// a valid lower bound for D(k).
double lower_bound_plancherel_at(double theta, int k, int n_terms, double r);

/// Maximum of lower_bound_plancherel_at over a uniform r grid that always
/// includes pi/2 (so the dominant-term bound is among the candidates).
double lower_bound_plancherel(double theta, int k, int n_terms = 20,
                              int r_grid = 512);

BoundReport make_bound_report(double theta, int k);

}  // namespace spheremix
