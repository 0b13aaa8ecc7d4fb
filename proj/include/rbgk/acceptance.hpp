#ifndef RBGK_ACCEPTANCE_HPP
#define RBGK_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace rbgk::acceptance {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs the full verification suite: the closed-form relaxation oracles for
/// both statistics, the beta range/monotonicity/derivative checks, the
/// conservation and convergence-order measurements, the geometric
/// identities, the moment-matching round trips, and the inadmissible-target
/// rejection.  Deterministic (fixed seeds).
std::vector<CheckResult> run_all();

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace rbgk::acceptance

#endif
