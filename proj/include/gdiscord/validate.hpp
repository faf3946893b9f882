#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gdiscord {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // worst observed value against the pinned tolerance
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Full self-check battery: closed-form families, protocol convergence,
// random-state properties, optimizer-vs-oracle and conditional-covariance
// identities. Deterministic for a given seed. inject_failure appends a
// synthetic failing check so callers can exercise their failure paths.
ValidationReport run_validation(std::uint64_t seed = 0, bool inject_failure = false);

}  // namespace gdiscord
