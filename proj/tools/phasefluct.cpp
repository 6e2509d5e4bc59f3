#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phasefluct/verify.hpp"

namespace {

using namespace phasefluct;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

int exit_code_for(const Error& e) {
  static const char* numerical[] = {
      "leakage-exceeded",     "insufficient-cutoff", "negative-variance",
      "imaginary-residue-exceeded", "max-steps-exceeded", "non-hermitian",
      "non-hermitian-generator", "non-hermitian-variance", "error-below-floor",
      "insufficient-points"};
  for (const char* code : numerical) {
    if (e.code() == code) return kExitNumericalError;
  }
  return kExitConfigError;
}

struct CommonFlags {
  std::string process = "fwm";
  std::string formalism = "bp";
  std::vector<double> alpha_sq;
  std::vector<double> theta;
  double g = 1.0;
  std::optional<double> t;
  std::optional<double> t_min, t_max;
  std::optional<int> t_count;
  std::string t_scale = "lin";
  std::vector<int> cutoffs;
  double tol = 1e-3;
  double accuracy = 1e-10;
  double leakage_threshold = 1e-8;
  std::string output;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--process", f.process, "Process: fwm, swm or shg");
  cmd->add_option("--formalism", f.formalism, "Phase formalism: sg or bp");
  cmd->add_option("--alpha-sq", f.alpha_sq, "Mean pump photon numbers |alpha|^2")
      ->delimiter(',');
  cmd->add_option("--theta", f.theta, "Pump phases in radians")->delimiter(',');
  cmd->add_option("--g", f.g, "Coupling constant (inverse time)");
  cmd->add_option("--t", f.t, "Single interaction time");
  cmd->add_option("--t-min", f.t_min, "Time grid start");
  cmd->add_option("--t-max", f.t_max, "Time grid end");
  cmd->add_option("--t-count", f.t_count, "Time grid point count");
  cmd->add_option("--t-scale", f.t_scale, "Time grid spacing: lin or log");
  cmd->add_option("--cutoffs", f.cutoffs, "Per-mode cutoff overrides")->delimiter(',');
  cmd->add_option("--tol", f.tol, "Comparison tolerance for rel_err_U");
  cmd->add_option("--accuracy", f.accuracy, "Evolution accuracy target");
  cmd->add_option("--leakage-threshold", f.leakage_threshold,
                  "Max tolerated boundary probability mass");
  cmd->add_option("--output", f.output, "Output CSV path");
  cmd->add_option("--config", f.config_path, "Config file (flags take precedence)");
}

ProcessKind parse_process_or_throw(const std::string& name) {
  if (auto k = parse_process(name)) return *k;
  throw Error("validation-error", "field 'process': unknown process '" + name + "'");
}

Formalism parse_formalism_or_throw(const std::string& name) {
  if (auto f = parse_formalism(name)) return *f;
  throw Error("validation-error", "field 'formalism': expected sg or bp, got '" + name + "'");
}

SweepConfig assemble_config(const CLI::App* cmd, const CommonFlags& f) {
  SweepConfig cfg;
  bool from_file = false;
  if (!f.config_path.empty()) {
    cfg = parse_config(f.config_path);
    from_file = true;
  }

  auto given = [&](const char* flag) { return cmd->count(flag) > 0; };

  if (!from_file || given("--process")) cfg.process = parse_process_or_throw(f.process);
  if (!from_file || given("--formalism"))
    cfg.formalism = parse_formalism_or_throw(f.formalism);
  if (given("--alpha-sq")) cfg.alpha_sq = f.alpha_sq;
  if (given("--theta")) cfg.theta = f.theta;
  if (given("--g")) cfg.g = f.g;
  if (given("--cutoffs")) cfg.cutoffs = f.cutoffs;
  if (given("--tol")) cfg.tol.compare = f.tol;
  if (given("--accuracy")) cfg.tol.evolve_accuracy = f.accuracy;
  if (given("--leakage-threshold")) cfg.tol.leakage_threshold = f.leakage_threshold;
  if (given("--output")) cfg.output = f.output;

  if (given("--t")) {
    cfg.t_grid = TimeGrid{*f.t, *f.t, 1, false};
  } else if (given("--t-min") || given("--t-max") || given("--t-count")) {
    if (!f.t_min || !f.t_max || !f.t_count) {
      throw Error("validation-error", "field 't': t-min, t-max and t-count are all required");
    }
    cfg.t_grid = TimeGrid{*f.t_min, *f.t_max, *f.t_count, f.t_scale == "log"};
    if (f.t_scale != "lin" && f.t_scale != "log") {
      throw Error("validation-error", "field 't.scale': expected lin or log");
    }
  } else if (!from_file) {
    throw Error("validation-error", "field 't': give --t or --t-min/--t-max/--t-count");
  }

  if (cfg.alpha_sq.empty())
    throw Error("validation-error", "field 'alpha_sq': at least one value required");
  if (cfg.theta.empty())
    throw Error("validation-error", "field 'theta': at least one value required");
  if (cfg.t_grid.count < 1)
    throw Error("validation-error", "field 't.count': must be >= 1");
  if (cfg.t_grid.min > cfg.t_grid.max)
    throw Error("validation-error", "field 't.min': must be <= t.max");
  return cfg;
}

int cmd_point(const CLI::App* cmd, const CommonFlags& f) {
  SweepConfig cfg = assemble_config(cmd, f);
  if (cfg.alpha_sq.size() != 1 || cfg.theta.size() != 1 || cfg.t_grid.count != 1) {
    throw Error("validation-error",
                "point expects exactly one alpha_sq, one theta and one t");
  }
  ProcessSpec spec;
  spec.kind = cfg.process;
  spec.g = cfg.g;
  spec.pump = pump_from_mean(cfg.alpha_sq[0], cfg.theta[0]);
  spec.t = cfg.t_grid.min;

  PointSettings settings;
  settings.cutoffs = cfg.cutoffs;
  settings.tol = cfg.tol;
  const SweepRecord rec = run_point(spec, cfg.formalism, settings);

  std::string header;
  for (const auto& c : sweep_columns()) {
    if (!header.empty()) header += ',';
    header += c;
  }
  std::cout << header << '\n' << to_csv_line(rec) << '\n';
  if (rec.validity_flag) {
    std::cerr << "warning: second-order validity parameter "
              << format_double(spec.smallness()) << " > 0.1\n";
  }
  return kExitOk;
}

int cmd_sweep(const CLI::App* cmd, const CommonFlags& f) {
  const SweepConfig cfg = assemble_config(cmd, f);
  const SweepSummary summary = run_sweep_to_file(cfg);
  std::cout << "wrote " << summary.rows << " rows to " << cfg.output << " ("
            << summary.failures << " failed points, worst rel_err_U = "
            << format_double(summary.worst_rel_err_u) << ")\n";
  return summary.failures == 0 ? kExitOk : kExitNumericalError;
}

int cmd_verify(const CLI::App* cmd, const CommonFlags& f) {
  VerifyOptions options;
  if (cmd->count("--process") > 0) {
    options.only_process = parse_process_or_throw(f.process);
  }
  options.tol.evolve_accuracy = f.accuracy;
  options.tol.leakage_threshold = f.leakage_threshold;

  const VerificationReport report = run_verification(options);
  print_report(report, std::cout);
  if (!f.output.empty()) {
    std::ofstream out(f.output, std::ios::binary);
    if (!out) throw Error("io-error", "cannot open '" + f.output + "'");
    write_report_csv(report, out);
  }
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

int cmd_taylor_check(const CLI::App* cmd, const CommonFlags& f) {
  std::vector<ProcessKind> kinds;
  if (cmd->count("--process") > 0) {
    kinds.push_back(parse_process_or_throw(f.process));
  } else {
    kinds = {ProcessKind::fwm, ProcessKind::swm, ProcessKind::shg};
  }
  bool ok = true;
  for (ProcessKind kind : kinds) {
    const auto res = taylor_check(kind);
    const bool pass = res.max_interior_diff <= 1e-9;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << to_string(kind)
              << "  max interior entry difference = "
              << format_double(res.max_interior_diff) << " (threshold 1e-09)\n";
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum phase fluctuation parameters for pump-depleting wave "
               "mixing, with an exact truncated-space evolution oracle"};
  app.require_subcommand(1);

  CommonFlags point_flags, sweep_flags, verify_flags, taylor_flags;
  CLI::App* point = app.add_subcommand("point", "Evaluate a single scenario");
  add_common(point, point_flags);
  CLI::App* sweep = app.add_subcommand("sweep", "Parameter sweep to CSV");
  add_common(sweep, sweep_flags);
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the verification suite (exit 0 iff all checks pass)");
  add_common(verify, verify_flags);
  CLI::App* taylor = app.add_subcommand(
      "taylor-check", "Compare the automated short-time expansion against the "
                      "literal second-order operators");
  add_common(taylor, taylor_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (point->parsed()) return cmd_point(point, point_flags);
    if (sweep->parsed()) return cmd_sweep(sweep, sweep_flags);
    if (verify->parsed()) return cmd_verify(verify, verify_flags);
    if (taylor->parsed()) return cmd_taylor_check(taylor, taylor_flags);
  } catch (const phasefluct::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumericalError;
  }
  return kExitConfigError;
}
