#include "phasefluct/analyzer.hpp"

#include <cmath>

namespace phasefluct {

CNResult cn_parameters(const MomentSet& m, Formalism formalism) {
  CNResult r;
  r.provenance = Provenance::exact;
  r.t_total = m.var_s + m.var_c;
  r.d = m.var_n - m.mean_n;
  r.s_param = m.var_n * m.var_s;

  const double phase_den = m.mean_s * m.mean_s + m.mean_c * m.mean_c;
  if (phase_den >= 1e-14) {
    r.u = m.var_n * r.t_total / phase_den;
  }
  const double c_sq = m.mean_c * m.mean_c;
  if (c_sq >= 1e-14) {
    r.q = r.s_param / c_sq;
  }

  if (formalism == Formalism::sg) {
    r.b_ratio = r.t_total / (1.0 - m.p0 / 2.0 - r.t_total);
    r.bound_ok = r.u.has_value() && *r.u >= 0.25 - 1e-10;
  } else {
    r.b_ratio = r.t_total / (1.0 - r.t_total);
    r.bound_ok = true;
  }
  return r;
}

namespace {

ComparisonReport::Field diff_field(const std::string& name,
                                   std::optional<double> exact,
                                   std::optional<double> formula, double tol) {
  ComparisonReport::Field f;
  f.name = name;
  if (exact.has_value() != formula.has_value()) {
    f.defined_mismatch = true;
    f.ok = false;
    return f;
  }
  if (!exact.has_value()) {  // both undefined: they agree
    f.ok = true;
    return f;
  }
  f.abs_diff = std::abs(*exact - *formula);
  f.rel_diff = std::abs(*formula) < 1e-12 ? f.abs_diff : f.abs_diff / std::abs(*formula);
  f.ok = f.rel_diff <= tol;
  return f;
}

}  // namespace

ComparisonReport compare(const ExactPoint& exact, const ClosedFormResult& formula,
                         double tolerance) {
  if (!(exact.spec == formula.spec)) {
    throw Error("spec-mismatch", "exact and closed-form results come from different scenarios");
  }
  ComparisonReport rep;
  rep.tolerance = tolerance;
  rep.fields.push_back(diff_field("U", exact.cn.u, formula.u, tolerance));
  rep.fields.push_back(diff_field("S_param", exact.cn.s_param, formula.s_param, tolerance));
  rep.fields.push_back(diff_field("Q", exact.cn.q, formula.q, tolerance));
  rep.fields.push_back(diff_field("N_bar", exact.moments.mean_n, formula.mean_n, tolerance));
  rep.fields.push_back(diff_field("var_N", exact.moments.var_n, formula.var_n, tolerance));
  rep.fields.push_back(diff_field("d", exact.cn.d, formula.d, tolerance));

  rep.pass = true;
  for (const auto& f : rep.fields) {
    rep.worst_rel = std::max(rep.worst_rel, f.rel_diff);
    rep.pass = rep.pass && f.ok;
  }
  return rep;
}

SlopeEstimate convergence_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) {
    throw Error("insufficient-points", "slope estimate needs at least 3 points");
  }
  for (const auto& [gt, err] : points) {
    if (err <= 1e-13) {
      throw Error("error-below-floor",
                  "error " + std::to_string(err) + " is at the numerical noise floor");
    }
    if (gt <= 0) {
      throw Error("validation-error", "gt values must be positive");
    }
  }

  const int n = static_cast<int>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [gt, err] : points) {
    const double x = std::log(gt);
    const double y = std::log(err);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  SlopeEstimate est;
  est.points = n;
  est.slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - est.slope * sx) / n;

  double ss = 0;
  for (const auto& [gt, err] : points) {
    const double r = std::log(err) - (est.slope * std::log(gt) + intercept);
    ss += r * r;
  }
  est.residual = std::sqrt(ss / n);
  return est;
}

}  // namespace phasefluct
