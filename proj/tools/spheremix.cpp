#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spheremix/discrepancy.hpp"
#include "spheremix/report.hpp"
#include "spheremix/spectral.hpp"
#include "spheremix/verify.hpp"
#include "spheremix/walk.hpp"

namespace {

using namespace spheremix;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitArgument = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void apply_threads(int threads) {
  if (threads <= 0) {
    if (const char* env = std::getenv("SPHEREMIX_THREADS")) {
      threads = std::atoi(env);
    }
  }
  if (threads > 0) omp_set_num_threads(threads);
}

double resolve_theta(double theta, bool degrees) {
  return degrees ? theta * kPi / 180.0 : theta;
}

bool theta_valid(double theta) { return theta > 0.0 && theta < kPi; }

int emit(const std::string& payload, const std::string& out_path,
         RunManifest manifest, const Timer& timer) {
  if (out_path.empty()) {
    std::cout << payload;
    return kExitOk;
  }
  manifest.duration_seconds = timer.seconds();
  try {
    write_output_with_manifest(out_path, payload, std::move(manifest));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int run_bounds(double theta, bool degrees, int k, const std::string& out,
               bool csv) {
  Timer timer;
  theta = resolve_theta(theta, degrees);
  if (!theta_valid(theta) || k < 2) {
    std::cerr << "error: need theta in (0, pi) and k >= 2\n";
    return kExitArgument;
  }
  BoundReport rep;
  try {
    rep = make_bound_report(theta, k);
  } catch (const truncation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  std::string payload;
  if (csv) {
    payload =
        "theta,k,C,upper_series,upper_closed,lower_dominant,lower_plancherel\n" +
        fmt17(rep.theta) + "," + std::to_string(rep.k) + "," + fmt17(rep.C) +
        "," + fmt17(rep.upper_series) + "," + fmt17(rep.upper_closed) + "," +
        fmt17(rep.lower_dominant) + "," + fmt17(rep.lower_plancherel) + "\n";
  } else {
    payload = bounds_json(rep);
  }
  RunManifest m;
  m.command = "bounds";
  m.parameters = {{"theta", fmt17(theta)},
                  {"k", std::to_string(k)},
                  {"format", json_quote(csv ? "csv" : "json")}};
  return emit(payload, out, std::move(m), timer);
}

int run_exact(double theta, bool degrees, int k, int grid_gamma, int grid_r,
              bool no_refine, const std::string& out) {
  Timer timer;
  theta = resolve_theta(theta, degrees);
  if (!theta_valid(theta) || k < 2 || grid_gamma < 2 || grid_r < 2) {
    std::cerr << "error: need theta in (0, pi), k >= 2 and grid >= 2x2\n";
    return kExitArgument;
  }
  const GridSpec grid{grid_gamma, grid_r};
  DiscrepancyResult res;
  try {
    res = exact_discrepancy(theta, k, grid, !no_refine);
  } catch (const truncation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  const std::string payload = exact_json(theta, k, grid, !no_refine, res);
  RunManifest m;
  m.command = "exact";
  m.parameters = {{"theta", fmt17(theta)},
                  {"k", std::to_string(k)},
                  {"grid_gamma", std::to_string(grid_gamma)},
                  {"grid_r", std::to_string(grid_r)},
                  {"refine", no_refine ? "false" : "true"}};
  return emit(payload, out, std::move(m), timer);
}

int run_simulate(double theta, bool degrees, int k,
                 const std::string& formulation, int64_t samples,
                 uint64_t seed, const std::string& out) {
  Timer timer;
  theta = resolve_theta(theta, degrees);
  if (!theta_valid(theta) || k < 0 || samples < 1) {
    std::cerr << "error: need theta in (0, pi), k >= 0 and samples >= 1\n";
    return kExitArgument;
  }
  WalkConfig cfg;
  cfg.theta = theta;
  cfg.k = k;
  try {
    cfg.formulation = parse_formulation(formulation);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  }
  cfg.seed = seed;
  cfg.m = samples;
  const SampleSet set = run_walk(cfg);
  RunManifest m;
  m.command = "simulate";
  m.parameters = {{"theta", fmt17(theta)},
                  {"k", std::to_string(k)},
                  {"formulation", json_quote(formulation)},
                  {"samples", std::to_string(samples)}};
  m.seed = seed;
  m.has_seed = true;
  return emit(to_csv(set), out, std::move(m), timer);
}

int run_curve(double theta, bool degrees, int k_min, int k_max,
              const std::string& out) {
  Timer timer;
  theta = resolve_theta(theta, degrees);
  if (!theta_valid(theta) || k_min < 2 || k_max < k_min) {
    std::cerr << "error: need theta in (0, pi) and 2 <= k-min <= k-max\n";
    return kExitArgument;
  }
  const double s2 = std::sin(theta) * std::sin(theta);
  std::vector<CurveRow> rows;
  try {
    for (int k = k_min; k <= k_max; ++k) {
      CurveRow row;
      row.k = k;
      row.lower_plancherel = lower_bound_plancherel(theta, k);
      row.exact = exact_discrepancy(theta, k).value;
      row.upper_series = upper_bound_series(theta, k);
      row.upper_closed = upper_bound_closed(k * s2);
      rows.push_back(row);
    }
  } catch (const truncation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  RunManifest m;
  m.command = "curve";
  m.parameters = {{"theta", fmt17(theta)},
                  {"k_min", std::to_string(k_min)},
                  {"k_max", std::to_string(k_max)}};
  return emit(curve_csv(rows), out, std::move(m), timer);
}

int run_verify(const std::string& profile) {
  VerifyProfile p;
  if (profile == "quick") {
    p = VerifyProfile::quick;
  } else if (profile == "full") {
    p = VerifyProfile::full;
  } else {
    std::cerr << "error: profile must be quick or full\n";
    return kExitArgument;
  }
  const VerifyReport report = run_verification(p);
  std::cout << format_report(report);
  return report.all_passed() ? kExitOk : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drunkard's-walk discrepancy toolkit for the unit sphere"};
  app.require_subcommand(1);

  double theta = 0.0;
  bool degrees = false;
  int threads = 0;
  int k = 2;
  int k_min = 2, k_max = 2;
  int grid_gamma = 256, grid_r = 256;
  bool no_refine = false;
  bool csv = false, json = false;
  int64_t samples = 10000;
  uint64_t seed = 0;
  std::string out;
  std::string formulation = "drunkard";
  std::string profile = "quick";

  auto add_common = [&](CLI::App* sub, bool needs_theta) {
    if (needs_theta) {
      sub->add_option("--theta", theta, "step size (radians unless --degrees)")
          ->required();
      sub->add_flag("--degrees", degrees, "interpret --theta in degrees");
    }
    sub->add_option("--threads", threads,
                    "cap OpenMP threads (SPHEREMIX_THREADS as fallback)");
    sub->add_option("--out", out, "write output to this path plus a manifest");
  };

  CLI::App* bounds = app.add_subcommand("bounds", "closed-form and series bounds for D(k)");
  add_common(bounds, true);
  bounds->add_option("--k", k, "number of steps (>= 2)")->required();
  bounds->add_flag("--csv", csv, "emit CSV instead of JSON");
  bounds->add_flag("--json", json, "emit JSON (default)");

  CLI::App* exact = app.add_subcommand("exact", "exact spectral discrepancy D(k)");
  add_common(exact, true);
  exact->add_option("--k", k, "number of steps (>= 2)")->required();
  exact->add_option("--grid-gamma", grid_gamma, "cap-center polar grid size");
  exact->add_option("--grid-r", grid_r, "cap-radius grid size");
  exact->add_flag("--no-refine", no_refine, "skip golden-section refinement");
  exact->add_flag("--json", json, "emit JSON (default)");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo walk endpoints as CSV");
  add_common(simulate, true);
  simulate->add_option("--k", k, "number of steps (>= 0)")->required();
  simulate->add_option("--formulation", formulation,
                       "drunkard | potted_plant | rotate_spin | bi_invariant");
  simulate->add_option("--samples", samples, "number of trajectories");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_flag("--csv", csv, "emit CSV (default)");

  CLI::App* curve = app.add_subcommand("curve", "D(k) and bounds over a k range as CSV");
  add_common(curve, true);
  curve->add_option("--k-min", k_min, "first k (>= 2)")->required();
  curve->add_option("--k-max", k_max, "last k")->required();
  curve->add_flag("--csv", csv, "emit CSV (default)");

  CLI::App* verify = app.add_subcommand("verify", "run the self-verification suite");
  verify->add_option("--profile", profile, "quick | full");
  verify->add_option("--threads", threads,
                     "cap OpenMP threads (SPHEREMIX_THREADS as fallback)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitArgument;
  }

  apply_threads(threads);

  try {
    if (bounds->parsed()) return run_bounds(theta, degrees, k, out, csv);
    if (exact->parsed())
      return run_exact(theta, degrees, k, grid_gamma, grid_r, no_refine, out);
    if (simulate->parsed())
      return run_simulate(theta, degrees, k, formulation, samples, seed, out);
    if (curve->parsed()) return run_curve(theta, degrees, k_min, k_max, out);
    if (verify->parsed()) return run_verify(profile);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitArgument;
}
