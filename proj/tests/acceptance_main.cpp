// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one line per criterion. Exit status is nonzero when
// any criterion fails.
//
// Criteria 2, 3 and 4 hold the published second-order closed forms for the
// four-wave and six-wave channels against the exact truncated-space
// evolution oracle. The exact dynamics disagrees with several published
// coefficients (see README, "Verification results"), so those criteria fail
// by honest measurement, and criterion 10 (which requires a fully green
// verify run) fails with them. The failing checks print the measured values.

#include <iostream>

#include "phasefluct/verify.hpp"

int main() {
  using namespace phasefluct;

  VerificationReport report;
  try {
    report = run_verification();
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << '\n';
    return 2;
  }

  for (const auto& check : report.checks) {
    if (!check.pass) {
      std::cout << "FAIL  C" << check.criterion << "  " << check.name
                << "  measured=" << format_double(check.measured)
                << "  threshold=" << format_double(check.threshold) << " ("
                << check.comparison << ")\n";
    }
  }
  std::cout << '\n';

  static const char* kCriteria[] = {
      "coherent baseline: bp U(t=0) = 1/2, sg U(t=0) >= 1/4",
      "closed-form agreement with exact evolution at g^2 t^2 asq = 1e-4",
      "convergence order of the U error in gt (slope >= 3)",
      "antibunching sign and magnitude of d on the short-time grid",
      "closed-form U reduction below 1/2 iff closed-form d < 0",
      "phase-operator identities on evolved states",
      "order-2 expansion matches the literal short-time operators",
      "conserved combinations, norm and energy under exact evolution",
      "closed-form U monotone decreasing in asq, steepest for swm",
      "determinism of sweep output and a fully green verify run",
  };

  bool all = true;
  for (int crit = 1; crit <= 10; ++crit) {
    int passed = 0;
    const int total = report.checks_for(crit, &passed);
    const bool ok = passed == total;
    all = all && ok;
    std::cout << "criterion " << crit << ": " << (ok ? "PASS" : "FAIL") << " ("
              << passed << "/" << total << " checks)  " << kCriteria[crit - 1]
              << '\n';
  }
  return all ? 0 : 1;
}
