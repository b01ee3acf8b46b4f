// Compares the serial reference kernels against the OpenMP paths.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "spheremix/discrepancy.hpp"
#include "spheremix/walk.hpp"

using namespace spheremix;

namespace {

template <typename F>
double time_seconds(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());

  WalkConfig cfg;
  cfg.theta = 1.0;
  cfg.k = 50;
  cfg.formulation = Formulation::drunkard;
  cfg.seed = 42;
  cfg.m = 200000;

  SampleSet serial_set, parallel_set;
  const double t_walk_serial =
      time_seconds([&] { serial_set = run_walk(cfg, Exec::serial); });
  const double t_walk_parallel =
      time_seconds([&] { parallel_set = run_walk(cfg); });
  const bool walk_match = serial_set.cos_polar == parallel_set.cos_polar;
  std::printf("run_walk        m=%lld k=%d    serial %7.3f s   parallel %7.3f s   speedup %5.2fx   identical %s\n",
              static_cast<long long>(cfg.m), cfg.k, t_walk_serial,
              t_walk_parallel, t_walk_serial / t_walk_parallel,
              walk_match ? "yes" : "NO");

  DiscrepancyResult ds, dp;
  const double theta = 0.9;
  const int k = 6;
  const GridSpec grid{256, 256};
  const double t_grid_serial = time_seconds(
      [&] { ds = exact_discrepancy(theta, k, grid, true, Exec::serial); });
  const double t_grid_parallel =
      time_seconds([&] { dp = exact_discrepancy(theta, k, grid, true); });
  const bool grid_match = ds.value == dp.value && ds.argmax_r == dp.argmax_r &&
                          ds.argmax_gamma == dp.argmax_gamma;
  std::printf("exact grid scan theta=%.2f k=%d serial %7.3f s   parallel %7.3f s   speedup %5.2fx   identical %s\n",
              theta, k, t_grid_serial, t_grid_parallel,
              t_grid_serial / t_grid_parallel, grid_match ? "yes" : "NO");

  DiscrepancyResult es, ep;
  const double t_emp_serial = time_seconds(
      [&] { es = empirical_discrepancy(parallel_set, 256, 128, Exec::serial); });
  const double t_emp_parallel = time_seconds(
      [&] { ep = empirical_discrepancy(parallel_set, 256, 128); });
  const bool emp_match = es.value == ep.value;
  std::printf("empirical sweep m=%lld        serial %7.3f s   parallel %7.3f s   speedup %5.2fx   identical %s\n",
              static_cast<long long>(cfg.m), t_emp_serial, t_emp_parallel,
              t_emp_serial / t_emp_parallel, emp_match ? "yes" : "NO");
  return 0;
}
