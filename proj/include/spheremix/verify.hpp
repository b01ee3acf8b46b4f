#pragma once

#include <string>
#include <vector>

namespace spheremix {

/// quick: m = 2e4 trajectories, monotonicity to k = 20, 128^2 grids.
/// full:  m = 1e5, monotonicity to k = 40, 256^2 grids (the acceptance
///        parameters).
enum class VerifyProfile { quick, full };

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // how `measured` must compare to `bound`
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<VerifyCheck> checks;
  double seconds = 0.0;

  bool passed() const;
  int n_pass() const;
};

struct VerifyReport {
  VerifyProfile profile = VerifyProfile::quick;
  std::vector<CriterionResult> criteria;

  bool all_passed() const;
};

/// criterion = 0 runs everything; 1..9 runs a single criterion.
VerifyReport run_verification(VerifyProfile profile, int criterion = 0);

/// Human-readable rendering: one summary line per criterion, one line per
/// check with measured value and bound.
std::string format_report(const VerifyReport& report);

}  // namespace spheremix
