#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phasefluct/analyzer.hpp"
#include "phasefluct/evolution.hpp"

namespace phasefluct {

struct TimeGrid {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  bool log_scale = false;

  std::vector<double> values() const;
};

struct ToleranceSet {
  double evolve_accuracy = 1e-10;
  double leakage_threshold = 1e-8;
  double compare = 1e-3;
};

struct SweepConfig {
  ProcessKind process = ProcessKind::fwm;
  Formalism formalism = Formalism::bp;
  std::vector<double> alpha_sq;
  std::vector<double> theta;
  double g = 1.0;
  TimeGrid t_grid;
  std::vector<int> cutoffs;  // empty: per-process defaults
  ToleranceSet tol;
  std::string output = "sweep.csv";
};

/// Parses a key/value config file (TOML syntax, flat keys, numeric arrays).
/// Unknown keys, malformed values and out-of-range fields raise parse-error
/// or validation-error naming the offending line or field.
SweepConfig parse_config(const std::string& path);
SweepConfig parse_config_text(std::istream& in);

struct PointSettings {
  std::vector<int> cutoffs;  // empty: defaults for the process
  ToleranceSet tol;
};

/// One output row. Numeric CSV fields print with 17 significant digits;
/// undefined values print as the literal token "undef". `error` is empty
/// unless the point failed, in which case the numeric outputs are undef and
/// the run continues.
struct SweepRecord {
  ProcessKind process = ProcessKind::fwm;
  Formalism formalism = Formalism::bp;
  double alpha_sq = 0.0;
  double theta = 0.0;
  double g = 0.0;
  double t = 0.0;
  double gt = 0.0;
  std::optional<double> mean_n, var_n, d;
  std::optional<double> mean_c, mean_s, mean_c2, mean_s2, var_c, var_s;
  std::optional<double> t_total, u, s_param, q;
  std::optional<double> u_formula, s_formula, q_formula, d_formula;
  std::optional<double> rel_err_u;
  bool validity_flag = false;
  std::optional<double> leak;
  std::string error;
};

/// Column names, in the exact CSV order.
const std::vector<std::string>& sweep_columns();
std::string to_csv_line(const SweepRecord& r);

/// Full pipeline for one scenario: space -> coherent state -> hamiltonian ->
/// evolve -> moments -> fluctuation parameters, plus the closed forms and
/// their comparison.
SweepRecord run_point(const ProcessSpec& spec, Formalism formalism,
                      const PointSettings& settings);

struct SweepSummary {
  int rows = 0;
  int failures = 0;
  double worst_rel_err_u = 0.0;
};

/// Lexicographic (alpha_sq, theta, t) order; identical configs give
/// byte-identical CSV. Points may be evaluated in parallel (capped by the
/// PHASEFLUCT_THREADS environment variable); rows are buffered and written
/// in order.
SweepSummary run_sweep(const SweepConfig& config, std::ostream& csv);
SweepSummary run_sweep_to_file(const SweepConfig& config);

std::string format_double(double v);

}  // namespace phasefluct
