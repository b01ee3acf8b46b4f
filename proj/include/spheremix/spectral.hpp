#pragma once

#include <stdexcept>
#include <vector>

namespace spheremix {

/// Raised when no cutoff N <= 10^6 certifies the requested tail bound
/// (theta too close to 0 or pi, or k too small, for the requested epsilon).
struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fourier data of the k-step walk: lambda[n] = P_n(cos theta), the (1,1)
/// transform entry of the generator; its k-th power is the walk's entry.
struct WalkSpectrum {
  double theta = 0.0;
  int k = 0;
  std::vector<double> lambda;
};

WalkSpectrum make_walk_spectrum(double theta, int k, int nmax);

/// P_n(cos theta)^k.
double walk_coefficient(double theta, int k, int n);

/// E[P_n(cos Theta_k)] for the walk's polar angle Theta_k after k steps.
/// Identical to walk_coefficient; exposed as the simulator oracle contract.
double moment(double theta, int k, int n);

struct Truncation {
  int cutoff = 0;          // series truncated after degree `cutoff`
  double tail_bound = 0.0; // certified bound on the discarded mass
};

/// Jackson-bound tail of sum_{n > cutoff} |P_n(cos theta)|^k:
///   (2/(pi sin^2 theta))^{k/2} * [ (2/(k-2)) cutoff^{1-k/2} + cutoff^{-k/2} ].
/// Requires k >= 4.
double certified_tail(double theta, int k, int cutoff);

/// Smallest N >= ceil(0.9/sin^2 theta) whose certified tail is <= epsilon.
/// Requires k >= 4; throws truncation_error if no N <= 10^6 suffices.
Truncation truncation_for(double theta, int k, double epsilon);

/// How a spectral series for the (theta, k) walk is summed.
/// certified: `cutoff` from the Jackson tail formula, `tail_bound` valid for
///   any series whose n-th term is bounded by |P_n(cos theta)|^k.
/// direct (k in {2,3}, where the tail integral does not apply): summation to
///   max(10^4, ceil(100/sin^2 theta)); evaluators estimate the discarded
///   mass from the last decade [N/10, N] of their own terms.
struct SeriesPlan {
  int cutoff = 0;
  double tail_bound = 0.0;  // certified mode only; direct mode fills per call
  bool certified = false;
};

/// allow_relax: on truncation failure for k >= 4, fall back to the largest
/// admissible cutoff (10^6) provided its certified tail is <= 1e-4 instead
/// of throwing. Used by operations that report their uncertainty rather
/// than promising a specific epsilon.
SeriesPlan plan_series(double theta, int k, double epsilon, bool allow_relax);

struct CapProbability {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Probability that the walk with step theta, started at the north pole, is
/// inside the cap of geodesic radius r centered at polar angle gamma after
/// k steps:
///   (1 - cos r)/2
///     + sum_{n>=1} (2n+1) P_n(cos theta)^k cap_coefficient(n, r) P_n(cos gamma).
/// Requires k >= 2 (the k-step density convolved with a cap indicator is
/// continuous from two steps on, so the series converges pointwise).
CapProbability cap_probability(double theta, int k, double gamma, double r,
                               double epsilon = 1e-9);

}  // namespace spheremix
