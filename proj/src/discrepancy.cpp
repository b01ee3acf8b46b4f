#include "spheremix/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "spheremix/legendre.hpp"
#include "spheremix/spectral.hpp"

namespace spheremix {

namespace {

constexpr double kDefaultEpsilon = 1e-9;
constexpr int kBlock = 1024;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return out;
}

// Series weights w_n = (2n+1) P_n(cos theta)^k for n = 1..cutoff
// (index 0 unused).
std::vector<double> series_weights(double theta, int k, int cutoff) {
  const LegendreTable lambda(cutoff, std::cos(theta));
  std::vector<double> w(static_cast<size_t>(cutoff) + 1, 0.0);
  for (int n = 1; n <= cutoff; ++n) {
    w[static_cast<size_t>(n)] = (2.0 * n + 1.0) * std::pow(lambda[n], k);
  }
  return w;
}

// F[i * nr + j] = sum_{n=1}^{N} w_n P_n(cos gamma_i) dhat_n(r_j), evaluated
// blockwise over n: per block, Legendre rows for the gamma grid and weighted
// cap coefficients for the r grid, then a rank-kTile update per gamma row
// (the inner j loop is a plain axpy, so it vectorizes). Summation order per
// entry is fixed (ascending n), so results are bit-identical for any thread
// count.
std::vector<double> deviation_grid(const std::vector<double>& w,
                                   const std::vector<double>& cos_gamma,
                                   const std::vector<double>& cos_r,
                                   Exec exec) {
  const int cutoff = static_cast<int>(w.size()) - 1;
  const int ng = static_cast<int>(cos_gamma.size());
  const int nr = static_cast<int>(cos_r.size());
  const bool parallel = (exec == Exec::parallel);
  constexpr int kTile = 64;  // degrees per rank update; d tile stays in cache

  std::vector<double> f(static_cast<size_t>(ng) * nr, 0.0);
  std::vector<double> g_block(static_cast<size_t>(ng) * kBlock);
  std::vector<double> d_block(static_cast<size_t>(kBlock) * nr);

  // Rolling recurrence state entering degree n0: (P_{n0-1}, P_{n0}).
  std::vector<double> g_prev(static_cast<size_t>(ng), 1.0), g_cur(cos_gamma);
  std::vector<double> r_prev(static_cast<size_t>(nr), 1.0), r_cur(cos_r);

  for (int n0 = 1; n0 <= cutoff; n0 += kBlock) {
    const int nb = std::min(kBlock, cutoff - n0 + 1);

#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < ng; ++i) {
      const double x = cos_gamma[static_cast<size_t>(i)];
      double prev = g_prev[static_cast<size_t>(i)];
      double cur = g_cur[static_cast<size_t>(i)];
      double* row = &g_block[static_cast<size_t>(i) * kBlock];
      for (int b = 0; b < nb; ++b) {
        const int n = n0 + b;
        row[b] = cur;
        const double next = ((2 * n + 1) * x * cur - n * prev) / (n + 1);
        prev = cur;
        cur = next;
      }
      g_prev[static_cast<size_t>(i)] = prev;
      g_cur[static_cast<size_t>(i)] = cur;
    }

#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < nr; ++j) {
      const double x = cos_r[static_cast<size_t>(j)];
      double p_nm1 = r_prev[static_cast<size_t>(j)];
      double p_n = r_cur[static_cast<size_t>(j)];
      for (int b = 0; b < nb; ++b) {
        const int n = n0 + b;
        const double p_np1 = ((2 * n + 1) * x * p_n - n * p_nm1) / (n + 1);
        d_block[static_cast<size_t>(b) * nr + j] =
            w[static_cast<size_t>(n)] * (p_nm1 - p_np1) /
            (2.0 * (2.0 * n + 1.0));
        p_nm1 = p_n;
        p_n = p_np1;
      }
      r_prev[static_cast<size_t>(j)] = p_nm1;
      r_cur[static_cast<size_t>(j)] = p_n;
    }

    for (int bt = 0; bt < nb; bt += kTile) {
      const int b_end = std::min(bt + kTile, nb);
#pragma omp parallel for schedule(static) if (parallel)
      for (int i = 0; i < ng; ++i) {
        const double* gi = &g_block[static_cast<size_t>(i) * kBlock];
        double* fi = &f[static_cast<size_t>(i) * nr];
        for (int b = bt; b < b_end; ++b) {
          const double c = gi[b];
          const double* db = &d_block[static_cast<size_t>(b) * nr];
          for (int j = 0; j < nr; ++j) fi[j] += c * db[j];
        }
      }
    }
  }
  return f;
}

// Pointwise deviation series, same ascending-n summation order as the grid
// kernel.
double eval_deviation(const std::vector<double>& w, double gamma, double r) {
  const int cutoff = static_cast<int>(w.size()) - 1;
  const double cg = std::cos(gamma);
  const double cr = std::cos(r);
  double g_prev = 1.0, g_cur = cg;
  double p_nm1 = 1.0, p_n = cr;
  double acc = 0.0;
  for (int n = 1; n <= cutoff; ++n) {
    const double p_np1 = ((2 * n + 1) * cr * p_n - n * p_nm1) / (n + 1);
    const double dhat = (p_nm1 - p_np1) / (2.0 * (2.0 * n + 1.0));
    acc += g_cur * (w[static_cast<size_t>(n)] * dhat);
    p_nm1 = p_n;
    p_n = p_np1;
    if (n < cutoff) {
      const double g_next = ((2 * n + 1) * cg * g_cur - n * g_prev) / (n + 1);
      g_prev = g_cur;
      g_cur = g_next;
    }
  }
  return acc;
}

// Golden-section maximization of fn over [lo, hi] down to an interval of
// tol; returns the best abscissa found.
template <typename F>
double golden_max(F&& fn, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    }
  }
  return (f1 > f2) ? x1 : x2;
}

}  // namespace

const char* discrepancy_method_name(DiscrepancyMethod m) {
  switch (m) {
    case DiscrepancyMethod::exact_spectral: return "exact_spectral";
    case DiscrepancyMethod::empirical: return "empirical";
    case DiscrepancyMethod::bound: return "bound";
  }
  return "unknown";
}

DiscrepancyResult exact_discrepancy(double theta, int k, GridSpec grid,
                                    bool refine, Exec exec) {
  if (k < 2) throw std::invalid_argument("exact_discrepancy: requires k >= 2");
  if (grid.n_gamma < 2 || grid.n_r < 2) {
    throw std::invalid_argument("exact_discrepancy: grid must be >= 2x2");
  }
  const SeriesPlan plan =
      plan_series(theta, k, kDefaultEpsilon, /*allow_relax=*/true);
  const std::vector<double> w = series_weights(theta, k, plan.cutoff);

  double tail = plan.tail_bound;
  if (!plan.certified) {
    // (gamma, r)-uniform envelope of the discarded terms:
    // |term_n| <= |P_n(cos theta)|^k = |w_n| / (2n+1).
    double est = 0.0;
    for (int n = plan.cutoff / 10 + 1; n <= plan.cutoff; ++n) {
      est += std::abs(w[static_cast<size_t>(n)]) / (2.0 * n + 1.0);
    }
    tail = est;
  }

  const std::vector<double> gammas = linspace(0.0, kPi, grid.n_gamma);
  const std::vector<double> radii = linspace(0.0, kPi, grid.n_r);
  std::vector<double> cos_gamma(gammas.size()), cos_r(radii.size());
  for (size_t i = 0; i < gammas.size(); ++i) cos_gamma[i] = std::cos(gammas[i]);
  for (size_t j = 0; j < radii.size(); ++j) cos_r[j] = std::cos(radii[j]);

  const std::vector<double> f = deviation_grid(w, cos_gamma, cos_r, exec);

  double best = -1.0;
  int best_i = 0, best_j = 0;
  for (int i = 0; i < grid.n_gamma; ++i) {
    for (int j = 0; j < grid.n_r; ++j) {
      const double v = std::abs(f[static_cast<size_t>(i) * grid.n_r + j]);
      if (v > best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  }

  const double cell_gamma = kPi / (grid.n_gamma - 1);
  const double cell_r = kPi / (grid.n_r - 1);
  double gamma_star = gammas[static_cast<size_t>(best_i)];
  double r_star = radii[static_cast<size_t>(best_j)];

  if (refine) {
    // Coordinate-wise golden-section polish within one cell of the best
    // grid point, to relative cell size 1e-6.
    for (int round = 0; round < 3; ++round) {
      gamma_star = golden_max(
          [&](double g) { return std::abs(eval_deviation(w, g, r_star)); },
          std::max(0.0, gamma_star - cell_gamma),
          std::min(kPi, gamma_star + cell_gamma), 1e-6 * cell_gamma);
      r_star = golden_max(
          [&](double r) { return std::abs(eval_deviation(w, gamma_star, r)); },
          std::max(0.0, r_star - cell_r), std::min(kPi, r_star + cell_r),
          1e-6 * cell_r);
    }
    best = std::max(best, std::abs(eval_deviation(w, gamma_star, r_star)));
  }

  // Lipschitz estimate per radian of the series in either coordinate,
  // with sup_r |dhat_n| <= 1/(2n+1).
  double lipschitz = 0.0;
  for (int n = 1; n <= plan.cutoff; ++n) {
    lipschitz += std::abs(w[static_cast<size_t>(n)]);
  }
  const double grid_gap = lipschitz * std::hypot(cell_gamma, cell_r);

  DiscrepancyResult out;
  out.value = best;
  out.argmax_gamma = gamma_star;
  out.argmax_r = r_star;
  out.tail_bound = tail;
  out.grid_gap = grid_gap;
  out.uncertainty = tail + grid_gap;
  out.method = DiscrepancyMethod::exact_spectral;
  return out;
}

DiscrepancyResult empirical_discrepancy(const SampleSet& samples,
                                        int n_centers, int n_radii,
                                        Exec exec) {
  const int64_t m = static_cast<int64_t>(samples.cos_polar.size());
  if (m < 1000) {
    throw std::invalid_argument(
        "empirical_discrepancy: needs at least 1000 samples");
  }
  if (samples.endpoints.size() != samples.cos_polar.size()) {
    throw std::invalid_argument(
        "empirical_discrepancy: sample set lacks full end points");
  }
  if (n_centers < 1 || n_radii < 2) {
    throw std::invalid_argument("empirical_discrepancy: bad grid");
  }

  // Fibonacci lattice plus both poles.
  std::vector<UnitVec3> centers;
  centers.reserve(static_cast<size_t>(n_centers) + 2);
  const double golden_angle = 2.399963229728653;
  for (int i = 0; i < n_centers; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n_centers;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    centers.push_back(UnitVec3{rho * std::cos(phi), rho * std::sin(phi), z});
  }
  centers.push_back(north());
  centers.push_back(UnitVec3{0.0, 0.0, -1.0});

  const std::vector<double> radii = linspace(0.0, kPi, n_radii);
  std::vector<double> cos_radii(radii.size());
  for (size_t j = 0; j < radii.size(); ++j) cos_radii[j] = std::cos(radii[j]);

  const int n_all = static_cast<int>(centers.size());
  std::vector<double> center_best(static_cast<size_t>(n_all), 0.0);
  std::vector<int> center_best_j(static_cast<size_t>(n_all), 0);

  const bool parallel = (exec == Exec::parallel);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int c = 0; c < n_all; ++c) {
    const UnitVec3 ctr = centers[static_cast<size_t>(c)];
    std::vector<double> dots(static_cast<size_t>(m));
    for (int64_t i = 0; i < m; ++i) {
      dots[static_cast<size_t>(i)] = dot(ctr, samples.endpoints[static_cast<size_t>(i)]);
    }
    std::sort(dots.begin(), dots.end(), std::greater<double>());
    double best = -1.0;
    int best_j = 0;
    for (int j = 0; j < n_radii; ++j) {
      // Cap membership is boundary inclusive (dot >= cos r); dots is sorted
      // descending, so the first element strictly below cos r marks the end.
      const auto it = std::upper_bound(dots.begin(), dots.end(), cos_radii[static_cast<size_t>(j)],
                                       std::greater<double>());
      const double frac =
          static_cast<double>(it - dots.begin()) / static_cast<double>(m);
      const double dev = std::abs(frac - uniform_cap_measure(radii[static_cast<size_t>(j)]));
      if (dev > best) {
        best = dev;
        best_j = j;
      }
    }
    center_best[static_cast<size_t>(c)] = best;
    center_best_j[static_cast<size_t>(c)] = best_j;
  }

  double value = -1.0;
  int arg_c = 0;
  for (int c = 0; c < n_all; ++c) {
    if (center_best[static_cast<size_t>(c)] > value) {
      value = center_best[static_cast<size_t>(c)];
      arg_c = c;
    }
  }

  const double n_caps = static_cast<double>(n_all) * n_radii;
  DiscrepancyResult out;
  out.value = value;
  out.argmax_gamma = geodesic_distance(north(), centers[static_cast<size_t>(arg_c)]);
  out.argmax_r = radii[static_cast<size_t>(center_best_j[static_cast<size_t>(arg_c)])];
  out.uncertainty =
      2.0 * std::sqrt(std::log(2.0 * n_caps / 0.001) / (2.0 * static_cast<double>(m)));
  out.method = DiscrepancyMethod::empirical;
  return out;
}

double upper_bound_series(double theta, int k) {
  if (k < 2) throw std::invalid_argument("upper_bound_series: requires k >= 2");
  const SeriesPlan plan =
      plan_series(theta, k, kDefaultEpsilon, /*allow_relax=*/true);
  const LegendreTable lambda(plan.cutoff, std::cos(theta));
  std::vector<double> terms(static_cast<size_t>(plan.cutoff) + 1, 0.0);
  for (int n = 1; n <= plan.cutoff; ++n) {
    terms[static_cast<size_t>(n)] = std::abs(std::pow(lambda[n], k));
  }
  double sum = 0.0;
  for (int n = plan.cutoff; n >= 1; --n) sum += terms[static_cast<size_t>(n)];
  double tail = plan.tail_bound;
  if (!plan.certified) {
    double est = 0.0;
    for (int n = plan.cutoff / 10 + 1; n <= plan.cutoff; ++n) {
      est += terms[static_cast<size_t>(n)];
    }
    tail = est;
  }
  return sum + tail;
}

double upper_bound_closed(double C) {
  if (!(C > 0.0)) throw std::invalid_argument("upper_bound_closed: C > 0");
  return std::min(1.0, 4.442 * std::exp(-C / 8.0));
}

double lower_bound_dominant(double theta, int k) {
  if (k < 2) throw std::invalid_argument("lower_bound_dominant: requires k >= 2");
  return std::sqrt(3.0) * 0.25 * std::pow(std::abs(std::cos(theta)), k);
}

double lower_bound_plancherel_at(double theta, int k, int n_terms, double r) {
  if (k < 2) throw std::invalid_argument("lower_bound_plancherel: k >= 2");
  if (n_terms < 1) throw std::invalid_argument("lower_bound_plancherel: n_terms >= 1");
  const LegendreTable lambda(n_terms, std::cos(theta));
  double sum = 0.0;
  for (int n = 1; n <= n_terms; ++n) {
    const double t = std::pow(lambda[n], k) * cap_coefficient(n, r);
    sum += (2.0 * n + 1.0) * t * t;
  }
  return std::sqrt(sum);
}

double lower_bound_plancherel(double theta, int k, int n_terms, int r_grid) {
  if (r_grid < 2) throw std::invalid_argument("lower_bound_plancherel: r_grid >= 2");
  double best = lower_bound_plancherel_at(theta, k, n_terms, kPi / 2.0);
  for (int j = 0; j < r_grid; ++j) {
    const double r = kPi * j / (r_grid - 1);
    best = std::max(best, lower_bound_plancherel_at(theta, k, n_terms, r));
  }
  return best;
}

BoundReport make_bound_report(double theta, int k) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw std::invalid_argument("make_bound_report: theta must lie in (0, pi)");
  }
  if (k < 2) throw std::invalid_argument("make_bound_report: requires k >= 2");
  const double s = std::sin(theta);
  BoundReport rep;
  rep.theta = theta;
  rep.k = k;
  rep.C = k * s * s;
  rep.upper_series = upper_bound_series(theta, k);
  rep.upper_closed = upper_bound_closed(rep.C);
  rep.lower_dominant = lower_bound_dominant(theta, k);
  rep.lower_plancherel = lower_bound_plancherel(theta, k);
  return rep;
}

}  // namespace spheremix
