#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phasefluct/phase_ops.hpp"
#include "phasefluct/process.hpp"

namespace phasefluct {

enum class Provenance { exact, closed_form };

/// Number-phase fluctuation parameters of one state.
///   u       = varN (varS + varC) / (<S>^2 + <C>^2)
///   s_param = varN varS
///   q       = s_param / <C>^2
///   t_total = varS + varC
///   d       = varN - <N>           (negative <=> sub-Poissonian)
/// u and q carry undefined markers when their denominators vanish; they are
/// never coerced to numbers.
struct CNResult {
  std::optional<double> u;
  double s_param = 0.0;
  std::optional<double> q;
  double t_total = 0.0;
  double d = 0.0;
  double b_ratio = 0.0;   // sg: T/(1 - p0/2 - T); bp: T/(1 - T)
  bool bound_ok = true;   // sg: u >= 1/4 - 1e-10 (always true for bp)
  Provenance provenance = Provenance::exact;
};

CNResult cn_parameters(const MomentSet& m, Formalism formalism);

/// One fully evaluated exact-pipeline point, for comparisons.
struct ExactPoint {
  ProcessSpec spec;
  MomentSet moments;
  CNResult cn;
};

/// Per-quantity difference between an exact point and the closed forms.
/// Relative differences switch to absolute below reference magnitude 1e-12
/// (d and u - 1/2 vanish at t = 0). Undefined markers only match undefined
/// markers.
struct ComparisonReport {
  struct Field {
    std::string name;
    double abs_diff = 0.0;
    double rel_diff = 0.0;
    bool defined_mismatch = false;  // one side undefined, the other not
    bool ok = false;
  };
  std::vector<Field> fields;
  double worst_rel = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

ComparisonReport compare(const ExactPoint& exact, const ClosedFormResult& formula,
                         double tolerance);

/// Least-squares slope of log(error) against log(gt).
struct SlopeEstimate {
  double slope = 0.0;
  double residual = 0.0;  // rms residual of the fit
  int points = 0;
};

/// Errors: insufficient-points (< 3), error-below-floor (any error <= 1e-13,
/// i.e. at the numerical noise floor where slopes are meaningless).
SlopeEstimate convergence_slope(std::span<const std::pair<double, double>> points);

}  // namespace phasefluct
