#pragma once

#include <string>
#include <vector>

#include "fracmix/problem.hpp"

namespace fracmix::verify {

enum class Level { fast, full };

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass = true;
  std::string notes;
};

// Runs, in order: the Mittag-Leffler identity suite, eigenbasis checks, the
// transmission checks of the assembled field, the PDE residual halving study,
// and the time-stepping oracle convergence orders.
VerificationReport run_verification(const ProblemConfig& cfg, Level level);

}  // namespace fracmix::verify
