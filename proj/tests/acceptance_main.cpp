// Runs the full self-check battery and prints one line per criterion.
// Exits nonzero when anything fails.

#include <cstdio>

#include "gdiscord/validate.hpp"

int main() {
  const gdiscord::ValidationReport report = gdiscord::run_validation(0);
  for (const gdiscord::CheckResult& c : report.checks)
    std::printf("criterion %d: %s  %s  [%s]\n", c.criterion, c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.detail.c_str());
  if (!report.all_pass()) {
    std::printf("FAILURES PRESENT\n");
    return 1;
  }
  std::printf("all criteria satisfied\n");
  return 0;
}
