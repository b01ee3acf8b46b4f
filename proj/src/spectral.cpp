#include "spheremix/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "spheremix/geometry.hpp"
#include "spheremix/legendre.hpp"

namespace spheremix {

namespace {

constexpr int kMaxCutoff = 1000000;
constexpr double kRelaxedTailCap = 1e-4;
constexpr int kRelaxedCutoffBudget = 100000;

void check_theta(double theta) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw std::invalid_argument("spectral: theta must lie in (0, pi)");
  }
}

}  // namespace

WalkSpectrum make_walk_spectrum(double theta, int k, int nmax) {
  check_theta(theta);
  if (k < 0) throw std::invalid_argument("make_walk_spectrum: k >= 0");
  WalkSpectrum s;
  s.theta = theta;
  s.k = k;
  s.lambda = legendre_batch(nmax, std::cos(theta)).values();
  return s;
}

double walk_coefficient(double theta, int k, int n) {
  check_theta(theta);
  if (k < 0 || n < 0) {
    throw std::invalid_argument("walk_coefficient: k, n must be >= 0");
  }
  return std::pow(legendre_eval(n, std::cos(theta)), k);
}

double moment(double theta, int k, int n) { return walk_coefficient(theta, k, n); }

double certified_tail(double theta, int k, int cutoff) {
  check_theta(theta);
  if (k < 4) throw std::invalid_argument("certified_tail: requires k >= 4");
  if (cutoff < 1) throw std::invalid_argument("certified_tail: cutoff >= 1");
  const double s2 = std::sin(theta) * std::sin(theta);
  const double a = 2.0 / (kPi * s2);
  const double half_k = 0.5 * k;
  const double lead = std::exp(half_k * std::log(a));
  const double n = static_cast<double>(cutoff);
  const double integral = (2.0 / (k - 2)) * std::exp((1.0 - half_k) * std::log(n));
  const double first = std::exp(-half_k * std::log(n));
  return lead * (integral + first);
}

Truncation truncation_for(double theta, int k, double epsilon) {
  check_theta(theta);
  if (k < 4) {
    throw std::invalid_argument(
        "truncation_for: tail integral requires k >= 4");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("truncation_for: epsilon must be positive");
  }
  const double s2 = std::sin(theta) * std::sin(theta);
  const int n_floor = std::max(1, static_cast<int>(std::ceil(0.9 / s2)));
  if (n_floor > kMaxCutoff || certified_tail(theta, k, kMaxCutoff) > epsilon) {
    throw truncation_error(
        "truncation_for: no cutoff <= 1e6 certifies the requested tail");
  }
  // Tail is decreasing in the cutoff: binary search the smallest admissible.
  int lo = n_floor, hi = kMaxCutoff;
  if (certified_tail(theta, k, lo) <= epsilon) {
    hi = lo;
  }
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (certified_tail(theta, k, mid) <= epsilon) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return Truncation{hi, certified_tail(theta, k, hi)};
}

SeriesPlan plan_series(double theta, int k, double epsilon, bool allow_relax) {
  check_theta(theta);
  if (k < 2) throw std::invalid_argument("plan_series: requires k >= 2");
  if (k <= 3) {
    const double s2 = std::sin(theta) * std::sin(theta);
    const int cutoff =
        std::max(10000, static_cast<int>(std::ceil(100.0 / s2)));
    return SeriesPlan{std::min(cutoff, kMaxCutoff), 0.0, false};
  }
  try {
    const Truncation t = truncation_for(theta, k, epsilon);
    return SeriesPlan{t.cutoff, t.tail_bound, true};
  } catch (const truncation_error&) {
    if (!allow_relax) throw;
    // Relax toward the loosest acceptable certificate, preferring a tighter
    // one whenever it is affordable: a tail far below the caller's other
    // error terms buys nothing but cutoff length.
    for (const double target : {1e-6, 1e-5, kRelaxedTailCap}) {
      if (certified_tail(theta, k, kMaxCutoff) > target) continue;
      const Truncation t = truncation_for(theta, k, target);
      if (t.cutoff <= kRelaxedCutoffBudget || target == kRelaxedTailCap) {
        return SeriesPlan{t.cutoff, t.tail_bound, true};
      }
    }
    throw;
  }
}

CapProbability cap_probability(double theta, int k, double gamma, double r,
                               double epsilon) {
  check_theta(theta);
  if (k < 2) {
    throw std::invalid_argument(
        "cap_probability: continuity of the k-step law needs k >= 2");
  }
  if (r < -1e-12 || r > kPi + 1e-12) {
    throw std::invalid_argument("cap_probability: r outside [0, pi]");
  }
  const SeriesPlan plan = plan_series(theta, k, epsilon, false);
  const int cutoff = plan.cutoff;

  const double ct = std::cos(theta);
  const double cr = std::cos(r);
  const double cg = std::cos(gamma);

  // Three rolling recurrences; terms stored so they can be accumulated
  // smallest first (descending n).
  std::vector<double> terms(static_cast<size_t>(cutoff) + 1, 0.0);
  double lt_prev = 1.0, lt = ct;          // P at cos theta
  double lg_prev = 1.0, lg = cg;          // P at cos gamma
  double lr_mm1 = 1.0, lr_m = cr;         // P at cos r, degrees m-1 and m
  for (int n = 1; n <= cutoff; ++n) {
    // Advance the cos r recurrence to degree n+1 while remembering n-1.
    const double lr_np1 = ((2 * n + 1) * cr * lr_m - n * lr_mm1) / (n + 1);
    const double dhat = (lr_mm1 - lr_np1) / (2.0 * (2.0 * n + 1.0));
    terms[static_cast<size_t>(n)] =
        (2.0 * n + 1.0) * std::pow(lt, k) * dhat * lg;
    lr_mm1 = lr_m;
    lr_m = lr_np1;
    if (n < cutoff) {
      const double lt_next = ((2 * n + 1) * ct * lt - n * lt_prev) / (n + 1);
      lt_prev = lt;
      lt = lt_next;
      const double lg_next = ((2 * n + 1) * cg * lg - n * lg_prev) / (n + 1);
      lg_prev = lg;
      lg = lg_next;
    }
  }

  double sum = 0.0;
  for (int n = cutoff; n >= 1; --n) sum += terms[static_cast<size_t>(n)];

  double tail = plan.tail_bound;
  if (!plan.certified) {
    // Empirical estimate: partial sums over the last decade [N/10, N]
    // dominate the discarded mass for the observed power-law decay.
    double est = 0.0;
    for (int n = cutoff / 10 + 1; n <= cutoff; ++n) {
      est += std::abs(terms[static_cast<size_t>(n)]);
    }
    tail = est;
  }
  return CapProbability{uniform_cap_measure(std::clamp(r, 0.0, kPi)) + sum,
                        tail};
}

}  // namespace spheremix
