#include "spheremix/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "spheremix/discrepancy.hpp"
#include "spheremix/geometry.hpp"
#include "spheremix/legendre.hpp"
#include "spheremix/quadrature.hpp"
#include "spheremix/report.hpp"
#include "spheremix/spectral.hpp"
#include "spheremix/stats.hpp"
#include "spheremix/walk.hpp"

namespace spheremix {

bool CriterionResult::passed() const {
  for (const VerifyCheck& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

int CriterionResult::n_pass() const {
  int n = 0;
  for (const VerifyCheck& c : checks) n += c.pass ? 1 : 0;
  return n;
}

bool VerifyReport::all_passed() const {
  for (const CriterionResult& c : criteria) {
    if (!c.passed()) return false;
  }
  return true;
}

namespace {

std::string gstr(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.8g", v);
  return std::string(buf);
}

VerifyCheck make_check(std::string name, double measured, std::string relation,
                       double bound) {
  VerifyCheck ch;
  ch.name = std::move(name);
  ch.measured = measured;
  ch.bound = bound;
  ch.relation = relation;
  if (relation == "<=") {
    ch.pass = measured <= bound;
  } else if (relation == ">=") {
    ch.pass = measured >= bound;
  } else if (relation == ">") {
    ch.pass = measured > bound;
  } else {
    ch.pass = false;
  }
  return ch;
}

uint64_t cfg_seed(Formulation f, double theta, int k) {
  uint64_t tb = 0;
  std::memcpy(&tb, &theta, sizeof(tb));
  uint64_t s = 0x9E3779B97F4A7C15ULL * (static_cast<uint64_t>(f) + 3);
  s ^= tb + 0x2545F4914F6CDD1DULL * static_cast<uint64_t>(k + 17);
  return s;
}

struct Ctx {
  VerifyProfile profile = VerifyProfile::quick;
  int64_t m = 20000;
  int k_max_mono = 20;
  GridSpec grid{128, 128};

  std::map<std::pair<double, int>, DiscrepancyResult> exact_cache;
  std::map<std::tuple<int, double, int>, SampleSet> walk_cache;

  const DiscrepancyResult& exact(double theta, int k) {
    const auto key = std::make_pair(theta, k);
    auto it = exact_cache.find(key);
    if (it == exact_cache.end()) {
      it = exact_cache.emplace(key, exact_discrepancy(theta, k, grid, true))
               .first;
    }
    return it->second;
  }

  const SampleSet& walk(Formulation f, double theta, int k) {
    const auto key = std::make_tuple(static_cast<int>(f), theta, k);
    auto it = walk_cache.find(key);
    if (it == walk_cache.end()) {
      WalkConfig cfg;
      cfg.theta = theta;
      cfg.k = k;
      cfg.formulation = f;
      cfg.seed = cfg_seed(f, theta, k);
      cfg.m = m;
      it = walk_cache.emplace(key, run_walk(cfg)).first;
    }
    return it->second;
  }
};

const double kThetasSandwich[] = {0.5, 1.0, kPi / 2.0, 2.2};
const int kCs[] = {4, 8, 16};
const double kThetasMoments[] = {0.7, kPi / 2.0, 2.2};
const int kKsMoments[] = {2, 5, 10};
const Formulation kForms[] = {Formulation::drunkard, Formulation::potted_plant,
                              Formulation::rotate_spin,
                              Formulation::bi_invariant};

// Criterion 1: the two-sided convergence envelope at k ~ C / sin^2 theta.
CriterionResult criterion_sandwich(Ctx& ctx) {
  CriterionResult c;
  c.id = 1;
  c.name = "sandwich-envelope";
  for (const double theta : kThetasSandwich) {
    const double s2 = std::sin(theta) * std::sin(theta);
    for (const int C : kCs) {
      const int k_up = static_cast<int>(std::ceil(C / s2));
      const DiscrepancyResult& du = ctx.exact(theta, k_up);
      const double ub = std::min(1.0, 4.442 * std::exp(-k_up * s2 / 8.0));
      c.checks.push_back(make_check(
          "upper[theta=" + gstr(theta) + ",C=" + std::to_string(C) +
              ",k=" + std::to_string(k_up) + "]",
          du.value, "<=", ub + du.uncertainty));

      const int k_lo = std::max(2, static_cast<int>(std::floor(C / s2)));
      const DiscrepancyResult& dl = ctx.exact(theta, k_lo);
      const double lb = 0.4330 * std::exp(-k_lo * s2 / 2.0);
      c.checks.push_back(make_check(
          "lower[theta=" + gstr(theta) + ",C=" + std::to_string(C) +
              ",k=" + std::to_string(k_lo) + "]",
          dl.value, ">=", lb - dl.uncertainty));
    }
  }
  return c;
}

// Criterion 2: dominant <= plancherel <= exact <= series upper bound, and
// the single-term plancherel value at r = pi/2 matches the dominant bound.
CriterionResult criterion_bound_chain(Ctx& ctx) {
  CriterionResult c;
  c.id = 2;
  c.name = "bound-chain";
  std::set<std::pair<double, int>> points;
  for (const double theta : kThetasSandwich) {
    const double s2 = std::sin(theta) * std::sin(theta);
    for (const int C : kCs) {
      points.emplace(theta, static_cast<int>(std::ceil(C / s2)));
      points.emplace(theta,
                     std::max(2, static_cast<int>(std::floor(C / s2))));
    }
  }
  for (const auto& [theta, k] : points) {
    const std::string tag =
        "[theta=" + gstr(theta) + ",k=" + std::to_string(k) + "]";
    const double dom = lower_bound_dominant(theta, k);
    const double pl = lower_bound_plancherel(theta, k);
    const DiscrepancyResult& ex = ctx.exact(theta, k);
    const double up = upper_bound_series(theta, k);
    c.checks.push_back(
        make_check("dominant<=plancherel" + tag, dom - pl, "<=", 1e-12));
    c.checks.push_back(make_check("plancherel<=exact" + tag, pl - ex.value,
                                  "<=", ex.uncertainty));
    c.checks.push_back(
        make_check("exact<=upper-series" + tag, ex.value - up, "<=", 1e-9));
    const double single =
        lower_bound_plancherel_at(theta, k, 1, kPi / 2.0);
    c.checks.push_back(make_check("plancherel-single-term" + tag,
                                  std::abs(single - dom), "<=", 1e-12));
  }
  return c;
}

// Criterion 3: spectral cap probabilities against Monte Carlo frequencies.
CriterionResult criterion_spectral_vs_mc(Ctx& ctx) {
  CriterionResult c;
  c.id = 3;
  c.name = "spectral-vs-monte-carlo";
  const double theta = 1.0;
  const int k = 5;
  const SampleSet& s = ctx.walk(Formulation::drunkard, theta, k);
  const double m = static_cast<double>(s.cos_polar.size());
  int within = 0;
  double worst_ratio = 0.0;
  for (int i = 1; i <= 5; ++i) {
    for (int j = 1; j <= 5; ++j) {
      const double gamma = i * kPi / 6.0;
      const double r = j * kPi / 6.0;
      const double p = cap_probability(theta, k, gamma, r).value;
      const UnitVec3 center{std::sin(gamma), 0.0, std::cos(gamma)};
      const double cr = std::cos(r);
      int64_t count = 0;
      for (const UnitVec3& e : s.endpoints) {
        if (dot(center, e) >= cr) ++count;
      }
      const double emp = static_cast<double>(count) / m;
      const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / m);
      const double dev = std::abs(emp - p);
      if (dev <= 4.0 * sigma) ++within;
      worst_ratio = std::max(worst_ratio, dev / sigma);
    }
  }
  c.checks.push_back(
      make_check("caps-within-4sigma-of-25", static_cast<double>(within),
                 ">=", 24.0));
  c.checks.push_back(
      make_check("worst-cap-deviation-sigmas", worst_ratio, "<=", 8.0));
  return c;
}

// Criterion 4: empirical moments against P_n(cos theta)^k, every
// formulation.
CriterionResult criterion_moments(Ctx& ctx) {
  CriterionResult c;
  c.id = 4;
  c.name = "moment-identity";
  const double tol = 4.0 / std::sqrt(static_cast<double>(ctx.m));
  for (const Formulation f : kForms) {
    for (const double theta : kThetasMoments) {
      for (const int k : kKsMoments) {
        const SampleSet& s = ctx.walk(f, theta, k);
        for (int n = 1; n <= 5; ++n) {
          const double emp = empirical_moment(s, n);
          const double truth = moment(theta, k, n);
          c.checks.push_back(make_check(
              std::string("moment[") + formulation_name(f) +
                  ",theta=" + gstr(theta) + ",k=" + std::to_string(k) +
                  ",n=" + std::to_string(n) + "]",
              std::abs(emp - truth), "<=", tol));
        }
      }
    }
  }
  return c;
}

// Criterion 5: the four formulations generate the same law - pairwise KS
// tests and moment gaps.
CriterionResult criterion_equivalence(Ctx& ctx) {
  CriterionResult c;
  c.id = 5;
  c.name = "formulation-equivalence";
  const double m = static_cast<double>(ctx.m);
  const double ks_crit = ks_critical(0.001, static_cast<size_t>(ctx.m),
                                     static_cast<size_t>(ctx.m));
  const double gap_tol = 6.0 / std::sqrt(m);
  for (const double theta : kThetasMoments) {
    for (const int k : kKsMoments) {
      // Per-formulation moments, computed once.
      std::map<int, std::array<double, 6>> moments;
      for (const Formulation f : kForms) {
        const SampleSet& s = ctx.walk(f, theta, k);
        std::array<double, 6> mm{};
        for (int n = 1; n <= 5; ++n) mm[static_cast<size_t>(n)] = empirical_moment(s, n);
        moments[static_cast<int>(f)] = mm;
      }
      for (size_t a = 0; a < 4; ++a) {
        for (size_t b = a + 1; b < 4; ++b) {
          const Formulation fa = kForms[a], fb = kForms[b];
          const std::string tag = std::string("[") + formulation_name(fa) +
                                  "~" + formulation_name(fb) +
                                  ",theta=" + gstr(theta) +
                                  ",k=" + std::to_string(k) + "]";
          const double ks = ks_two_sample(ctx.walk(fa, theta, k).cos_polar,
                                          ctx.walk(fb, theta, k).cos_polar);
          c.checks.push_back(make_check("ks" + tag, ks, "<=", ks_crit));
          double gap = 0.0;
          for (int n = 1; n <= 5; ++n) {
            gap = std::max(gap,
                           std::abs(moments[static_cast<int>(fa)][static_cast<size_t>(n)] -
                                    moments[static_cast<int>(fb)][static_cast<size_t>(n)]));
          }
          c.checks.push_back(make_check("moment-gap" + tag, gap, "<=", gap_tol));
        }
      }
    }
  }
  return c;
}

// Criterion 6: per-step displacement contracts.
CriterionResult criterion_step_contracts(Ctx&) {
  CriterionResult c;
  c.id = 6;
  c.name = "step-size-contracts";
  const double theta = 1.0;
  const int n_steps = 10000;

  {
    SplitStream rng(0xD15F1ULL, 1);
    UnitVec3 y = north();
    double worst = 0.0;
    for (int i = 0; i < n_steps; ++i) {
      const UnitVec3 next = step_drunkard(y, theta, rng);
      worst = std::max(worst, std::abs(geodesic_distance(y, next) - theta));
      y = next;
    }
    c.checks.push_back(
        make_check("drunkard-displacement-equals-theta", worst, "<=", 1e-12));
  }
  {
    SplitStream rng(0xD15F2ULL, 1);
    UnitVec3 y = north();
    double worst = 0.0;
    for (int i = 0; i < n_steps; ++i) {
      const UnitVec3 next = step_potted(y, theta, rng);
      worst = std::max(worst, geodesic_distance(y, next));
      y = next;
    }
    c.checks.push_back(
        make_check("potted-displacement-max", worst, "<=", theta + 1e-12));
  }
  {
    SplitStream rng(0xD15F4ULL, 1);
    UnitVec3 y = north();
    double worst = 0.0;
    for (int i = 0; i < n_steps; ++i) {
      const UnitVec3 next = step_biinvariant(y, theta, rng);
      worst = std::max(worst, geodesic_distance(y, next));
      y = next;
    }
    c.checks.push_back(
        make_check("biinvariant-exceeds-theta", worst, ">", theta));
  }
  return c;
}

// Criterion 7: Legendre identities and both square bounds.
CriterionResult criterion_legendre_suite(Ctx&) {
  CriterionResult c;
  c.id = 7;
  c.name = "legendre-suite";

  double worst_integral = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst_integral)
  for (int n = 1; n <= 50; ++n) {
    for (int j = 0; j < 64; ++j) {
      const double r = kPi * (j + 0.5) / 64.0;
      const double q = adaptive_simpson(
          [n](double x) { return legendre_eval(n, x); }, std::cos(r), 1.0,
          1e-12);
      worst_integral =
          std::max(worst_integral, std::abs(0.5 * q - cap_coefficient(n, r)));
    }
  }
  c.checks.push_back(
      make_check("integral-identity-max-error", worst_integral, "<=", 1e-10));

  double worst_gen = 0.0;
  for (int t = 0; t < 33; ++t) {
    const double x = -1.0 + 2.0 * t / 32.0;
    const LegendreTable table(200, x);
    double sum = 0.0;
    for (int n = 200; n >= 0; --n) sum += table[n] * std::pow(0.5, n);
    const double closed = 1.0 / std::sqrt(1.25 - x);
    worst_gen = std::max(worst_gen, std::abs(sum - closed));
  }
  c.checks.push_back(
      make_check("generating-function-max-error", worst_gen, "<=", 1e-10));

  double worst_jackson = -1.0;
  double worst_small = -1.0;
  double boundedness = 0.0;
  for (int t = 0; t < 128; ++t) {
    const double theta = kPi * (t + 0.5) / 128.0;
    const double s2 = std::sin(theta) * std::sin(theta);
    const LegendreTable table(500, std::cos(theta));
    for (int n = 1; n <= 500; ++n) {
      const double p2 = table[n] * table[n];
      boundedness = std::max(boundedness, std::abs(table[n]));
      worst_jackson = std::max(worst_jackson, p2 - bound_jackson(n, theta));
      if (n * s2 <= 0.9) {
        worst_small = std::max(worst_small, p2 - bound_small_theta(n, theta));
      }
    }
  }
  c.checks.push_back(
      make_check("jackson-bound-dominates", worst_jackson, "<=", 0.0));
  c.checks.push_back(
      make_check("small-theta-bound-dominates", worst_small, "<=", 0.0));
  c.checks.push_back(
      make_check("boundedness-max-abs", boundedness, "<=", 1.0 + 1e-12));
  return c;
}

// Criterion 8: D(k+1) <= D(k) within combined uncertainties.
CriterionResult criterion_monotonicity(Ctx& ctx) {
  CriterionResult c;
  c.id = 8;
  c.name = "monotonicity";
  const double thetas[] = {0.5, 1.0, 2.2};
  for (const double theta : thetas) {
    for (int k = 2; k <= ctx.k_max_mono; ++k) {
      const DiscrepancyResult& a = ctx.exact(theta, k);
      const DiscrepancyResult& b = ctx.exact(theta, k + 1);
      c.checks.push_back(make_check(
          "mono[theta=" + gstr(theta) + ",k=" + std::to_string(k) + "]",
          b.value - a.value, "<=", a.uncertainty + b.uncertainty));
    }
  }
  return c;
}

// Criterion 9: repeated runs and thread counts produce identical bits.
CriterionResult criterion_determinism(Ctx& ctx) {
  CriterionResult c;
  c.id = 9;
  c.name = "determinism";
  WalkConfig cfg;
  cfg.theta = 0.9;
  cfg.k = 7;
  cfg.formulation = Formulation::bi_invariant;
  cfg.seed = 0xC0FFEEULL;
  cfg.m = std::min<int64_t>(ctx.m, 20000);

  const SampleSet a = run_walk(cfg);
  const SampleSet b = run_walk(cfg);
  const SampleSet s = run_walk(cfg, Exec::serial);
  const bool repeat_equal = a.cos_polar == b.cos_polar &&
                            to_csv(a) == to_csv(b);
  const bool serial_equal = a.cos_polar == s.cos_polar &&
                            to_csv(a) == to_csv(s);
  c.checks.push_back(make_check("walk-repeat-identical",
                                repeat_equal ? 0.0 : 1.0, "<=", 0.0));
  c.checks.push_back(make_check("walk-serial-vs-parallel",
                                serial_equal ? 0.0 : 1.0, "<=", 0.0));

  const int old_threads = omp_get_max_threads();
  omp_set_num_threads(1);
  const SampleSet w1 = run_walk(cfg);
  const DiscrepancyResult e1 = exact_discrepancy(0.9, 7, ctx.grid, true);
  const DiscrepancyResult emp1 =
      empirical_discrepancy(w1, 128, 64);
  omp_set_num_threads(8);
  const SampleSet w8 = run_walk(cfg);
  const DiscrepancyResult e8 = exact_discrepancy(0.9, 7, ctx.grid, true);
  const DiscrepancyResult emp8 =
      empirical_discrepancy(w8, 128, 64);
  omp_set_num_threads(old_threads);

  const bool walk_threads_equal = to_csv(w1) == to_csv(w8);
  const GridSpec g = ctx.grid;
  const bool exact_threads_equal =
      exact_json(0.9, 7, g, true, e1) == exact_json(0.9, 7, g, true, e8);
  const bool emp_threads_equal =
      emp1.value == emp8.value && emp1.argmax_r == emp8.argmax_r &&
      emp1.argmax_gamma == emp8.argmax_gamma;
  c.checks.push_back(make_check("walk-threads-1-vs-8",
                                walk_threads_equal ? 0.0 : 1.0, "<=", 0.0));
  c.checks.push_back(make_check("exact-threads-1-vs-8",
                                exact_threads_equal ? 0.0 : 1.0, "<=", 0.0));
  c.checks.push_back(make_check("empirical-threads-1-vs-8",
                                emp_threads_equal ? 0.0 : 1.0, "<=", 0.0));
  return c;
}

}  // namespace

VerifyReport run_verification(VerifyProfile profile, int criterion) {
  Ctx ctx;
  ctx.profile = profile;
  if (profile == VerifyProfile::full) {
    ctx.m = 100000;
    ctx.k_max_mono = 40;
    ctx.grid = GridSpec{256, 256};
  } else {
    ctx.m = 20000;
    ctx.k_max_mono = 20;
    ctx.grid = GridSpec{128, 128};
  }

  VerifyReport report;
  report.profile = profile;

  struct Entry {
    int id;
    CriterionResult (*fn)(Ctx&);
    double runtime_cap;  // seconds; 0 = no cap stated
  };
  const Entry entries[] = {
      {1, criterion_sandwich, 300.0},      {2, criterion_bound_chain, 0.0},
      {3, criterion_spectral_vs_mc, 60.0}, {4, criterion_moments, 0.0},
      {5, criterion_equivalence, 0.0},     {6, criterion_step_contracts, 0.0},
      {7, criterion_legendre_suite, 30.0}, {8, criterion_monotonicity, 0.0},
      {9, criterion_determinism, 0.0},
  };

  for (const Entry& e : entries) {
    if (criterion != 0 && criterion != e.id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = e.fn(ctx);
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    if (e.runtime_cap > 0.0) {
      r.checks.push_back(
          make_check("runtime-seconds", r.seconds, "<=", e.runtime_cap));
    }
    report.criteria.push_back(std::move(r));
    if (report.criteria.back().id == 5) ctx.walk_cache.clear();
  }
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::string out;
  out += "spheremix self-verification (profile: ";
  out += (report.profile == VerifyProfile::full ? "full" : "quick");
  out += ")\n";
  char buf[256];
  for (const CriterionResult& c : report.criteria) {
    std::snprintf(buf, sizeof(buf), "[%d] %-28s %s  (%d/%zu checks, %.1f s)\n",
                  c.id, c.name.c_str(), c.passed() ? "PASS" : "FAIL",
                  c.n_pass(), c.checks.size(), c.seconds);
    out += buf;
    for (const VerifyCheck& ch : c.checks) {
      std::snprintf(buf, sizeof(buf), "    %s %-58s measured=%-14.8g %s %.8g\n",
                    ch.pass ? "pass" : "FAIL", ch.name.c_str(), ch.measured,
                    ch.relation.c_str(), ch.bound);
      out += buf;
    }
  }
  int n_pass = 0;
  for (const CriterionResult& c : report.criteria) n_pass += c.passed();
  std::snprintf(buf, sizeof(buf), "overall: %s (%d/%zu criteria pass)\n",
                report.all_passed() ? "PASS" : "FAIL", n_pass,
                report.criteria.size());
  out += buf;
  return out;
}

}  // namespace spheremix
