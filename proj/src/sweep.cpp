#include "phasefluct/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

namespace phasefluct {

std::vector<double> TimeGrid::values() const {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(min);
    return out;
  }
  if (log_scale) {
    const double ratio = std::log(max / min) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(min * std::exp(ratio * i));
  } else {
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) out.push_back(min + step * i);
  }
  out.back() = max;  // guard against rounding on the endpoint
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

static std::string format_opt(const std::optional<double>& v) {
  return v.has_value() ? format_double(*v) : std::string("undef");
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "process", "formalism", "alpha_sq", "theta",   "g",
      "t",       "gt",        "N_bar",    "var_N",   "d",
      "mean_C",  "mean_S",    "mean_C2",  "mean_S2", "var_C",
      "var_S",   "T",         "U",        "S_param", "Q",
      "U_formula", "S_formula", "Q_formula", "d_formula",
      "rel_err_U", "validity_flag", "leakage", "error"};
  return cols;
}

std::string to_csv_line(const SweepRecord& r) {
  std::string out;
  out += to_string(r.process);
  out += ',';
  out += to_string(r.formalism);
  for (double v : {r.alpha_sq, r.theta, r.g, r.t, r.gt}) {
    out += ',';
    out += format_double(v);
  }
  for (const auto& v :
       {r.mean_n, r.var_n, r.d, r.mean_c, r.mean_s, r.mean_c2, r.mean_s2,
        r.var_c, r.var_s, r.t_total, r.u, r.s_param, r.q, r.u_formula,
        r.s_formula, r.q_formula, r.d_formula, r.rel_err_u}) {
    out += ',';
    out += format_opt(v);
  }
  out += ',';
  out += r.validity_flag ? '1' : '0';
  out += ',';
  out += format_opt(r.leak);
  out += ',';
  std::string err = r.error;
  std::replace(err.begin(), err.end(), ',', ';');
  std::replace(err.begin(), err.end(), '\n', ' ');
  out += err;
  return out;
}

SweepRecord run_point(const ProcessSpec& spec, Formalism formalism,
                      const PointSettings& settings) {
  SweepRecord rec;
  rec.process = spec.kind;
  rec.formalism = formalism;
  rec.alpha_sq = spec.pump.mean_photons();
  rec.theta = spec.pump.phase;
  rec.g = spec.g;
  rec.t = spec.t;
  rec.gt = spec.g * spec.t;
  rec.validity_flag = spec.validity_warning();

  const ModeSpace space = build_process_space(spec, settings.cutoffs);
  const StateVector initial =
      coherent_pump_state(space, spec.pump, settings.tol.leakage_threshold);

  EvolutionSettings evo;
  evo.accuracy = settings.tol.evolve_accuracy;
  evo.leakage_threshold = settings.tol.leakage_threshold;
  const ModeOperator h = interaction_hamiltonian(spec, space);
  const StateVector evolved = evolve(initial, h, spec.t, evo);
  rec.leak = leakage(evolved);

  // bp rescaling uses the evolved state's own mean photon number
  PhaseOperatorSet set;
  if (formalism == Formalism::bp) {
    const double nbar =
        expectation(evolved, number_op(space, space.pump_mode)).real();
    set = bp_operators(space, space.pump_mode, nbar);
  } else {
    set = sg_operators(space, space.pump_mode);
  }

  const MomentSet m = moments(evolved, set);
  const CNResult cn = cn_parameters(m, formalism);
  const ClosedFormResult formula = closed_form(spec);

  rec.mean_n = m.mean_n;
  rec.var_n = m.var_n;
  rec.d = cn.d;
  rec.mean_c = m.mean_c;
  rec.mean_s = m.mean_s;
  rec.mean_c2 = m.mean_c2;
  rec.mean_s2 = m.mean_s2;
  rec.var_c = m.var_c;
  rec.var_s = m.var_s;
  rec.t_total = cn.t_total;
  rec.u = cn.u;
  rec.s_param = cn.s_param;
  rec.q = cn.q;
  rec.u_formula = formula.u;
  rec.s_formula = formula.s_param;
  rec.q_formula = formula.q;
  rec.d_formula = formula.d;

  const ComparisonReport cmp =
      compare(ExactPoint{spec, m, cn}, formula, settings.tol.compare);
  if (!cmp.fields[0].defined_mismatch && cn.u.has_value()) {
    rec.rel_err_u = cmp.fields[0].rel_diff;
  }
  return rec;
}

namespace {

int thread_cap() {
  if (const char* env = std::getenv("PHASEFLUCT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

SweepSummary run_sweep(const SweepConfig& config, std::ostream& csv) {
  struct Task {
    ProcessSpec spec;
  };
  // lexicographic row order over (alpha_sq, theta, t)
  std::vector<double> alphas = config.alpha_sq;
  std::vector<double> thetas = config.theta;
  std::sort(alphas.begin(), alphas.end());
  std::sort(thetas.begin(), thetas.end());
  std::vector<Task> tasks;
  for (double asq : alphas) {
    for (double theta : thetas) {
      for (double t : config.t_grid.values()) {
        ProcessSpec spec;
        spec.kind = config.process;
        spec.g = config.g;
        spec.pump = pump_from_mean(asq, theta);
        spec.t = t;
        tasks.push_back(Task{spec});
      }
    }
  }

  PointSettings settings;
  settings.cutoffs = config.cutoffs;
  settings.tol = config.tol;

  std::vector<SweepRecord> rows(tasks.size());
  const int workers =
      std::max(1, std::min<int>(thread_cap(), static_cast<int>(tasks.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        rows[i] = run_point(tasks[i].spec, config.formalism, settings);
      } catch (const std::exception& e) {
        SweepRecord rec;
        rec.process = tasks[i].spec.kind;
        rec.formalism = config.formalism;
        rec.alpha_sq = tasks[i].spec.pump.mean_photons();
        rec.theta = tasks[i].spec.pump.phase;
        rec.g = tasks[i].spec.g;
        rec.t = tasks[i].spec.t;
        rec.gt = tasks[i].spec.g * tasks[i].spec.t;
        rec.validity_flag = tasks[i].spec.validity_warning();
        rec.error = e.what();
        rows[i] = rec;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::string header;
  for (const auto& c : sweep_columns()) {
    if (!header.empty()) header += ',';
    header += c;
  }
  csv << header << '\n';

  SweepSummary summary;
  for (const auto& rec : rows) {
    csv << to_csv_line(rec) << '\n';
    ++summary.rows;
    if (!rec.error.empty()) ++summary.failures;
    if (rec.rel_err_u.has_value()) {
      summary.worst_rel_err_u = std::max(summary.worst_rel_err_u, *rec.rel_err_u);
    }
  }
  return summary;
}

SweepSummary run_sweep_to_file(const SweepConfig& config) {
  std::ofstream out(config.output, std::ios::binary);  // LF endings everywhere
  if (!out) {
    throw Error("io-error", "cannot open output file '" + config.output + "'");
  }
  return run_sweep(config, out);
}

}  // namespace phasefluct
