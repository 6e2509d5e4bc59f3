#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phasefluct/sweep.hpp"

namespace phasefluct {

struct CheckResult {
  int criterion = 0;       // 1..10
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "<=", ">=", "==0", ...
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  bool criterion_pass(int criterion) const;
  int checks_for(int criterion, int* passed = nullptr) const;
};

struct VerifyOptions {
  std::optional<ProcessKind> only_process;  // restrict process-specific checks
  ToleranceSet tol;
  /// Closed-form hook, replaceable in tests (negative controls).
  std::function<ClosedFormResult(const ProcessSpec&)> formula;
};

/// Runs the built-in verification suite: coherent baselines, closed-form
/// agreement against exact evolution, convergence order, antibunching sign
/// and magnitude, the U-reduction/antibunching sign link, operator
/// identities, short-time operator fidelity, conservation laws, monotonicity
/// and CSV determinism.
VerificationReport run_verification(const VerifyOptions& options = {});

/// One line per check, then a ten-line per-criterion summary.
void print_report(const VerificationReport& report, std::ostream& out);

/// Machine-readable form: criterion,name,status,measured,threshold.
void write_report_csv(const VerificationReport& report, std::ostream& out);

/// Entry-wise fidelity of the automated order-2 expansion against the
/// literal second-order operator, on the interior subspace.
struct TaylorCheckResult {
  ProcessKind process;
  double max_interior_diff = 0.0;
  std::vector<int> margins;
};

TaylorCheckResult taylor_check(ProcessKind kind, double g = 0.1, double t = 0.1);

}  // namespace phasefluct
