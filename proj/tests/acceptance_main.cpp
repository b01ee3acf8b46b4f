// Acceptance suite: runs the verification criteria at the full profile and
// prints one line per criterion plus every check with its measured value
// and tolerance. Exit code 0 iff all selected criteria pass.
//
// Flags: --quick        reduced profile (smaller samples and grids)
//        --criterion N  run a single criterion (1..9)

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "spheremix/verify.hpp"

int main(int argc, char** argv) {
  spheremix::VerifyProfile profile = spheremix::VerifyProfile::full;
  int criterion = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) {
      profile = spheremix::VerifyProfile::quick;
    } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
    }
  }
  const spheremix::VerifyReport report =
      spheremix::run_verification(profile, criterion);
  const std::string text = spheremix::format_report(report);
  std::fwrite(text.data(), 1, text.size(), stdout);
  return report.all_passed() ? 0 : 1;
}
