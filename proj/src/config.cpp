#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "phasefluct/sweep.hpp"

namespace phasefluct {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct RawValue {
  std::string text;
  int line = 0;
};

double parse_number(const RawValue& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v.text, &pos);
    if (pos != v.text.size()) throw std::invalid_argument("trailing");
    return d;
  } catch (const std::exception&) {
    throw Error("parse-error", "line " + std::to_string(v.line) + ": key '" + key +
                                   "' expects a number, got '" + v.text + "'");
  }
}

std::vector<double> parse_array(const RawValue& v, const std::string& key) {
  std::string t = trim(v.text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw Error("parse-error", "line " + std::to_string(v.line) + ": key '" + key +
                                   "' expects an array [..]");
  }
  std::vector<double> out;
  std::stringstream ss(t.substr(1, t.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_number(RawValue{item, v.line}, key));
  }
  return out;
}

std::string parse_string(const RawValue& v, const std::string& key) {
  std::string t = trim(v.text);
  if (t.size() >= 2 && t.front() == '"' && t.back() == '"') {
    return t.substr(1, t.size() - 2);
  }
  throw Error("parse-error", "line " + std::to_string(v.line) + ": key '" + key +
                                 "' expects a quoted string");
}

}  // namespace

SweepConfig parse_config_text(std::istream& in) {
  std::map<std::string, RawValue> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("parse-error", "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error("parse-error", "line " + std::to_string(lineno) + ": empty key or value");
    }
    if (kv.count(key)) {
      throw Error("parse-error", "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    kv[key] = RawValue{value, lineno};
  }

  static const std::vector<std::string> known = {
      "process", "formalism", "alpha_sq", "theta",  "g",
      "t",       "t_min",     "t_max",    "t_count", "t_scale",
      "cutoffs", "accuracy",  "leakage_threshold",  "tol_compare", "output"};
  for (const auto& [key, value] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error("validation-error",
                  "unknown key '" + key + "' (line " + std::to_string(value.line) + ")");
    }
  }

  SweepConfig cfg;

  if (!kv.count("process")) {
    throw Error("validation-error", "field 'process' is required");
  }
  const std::string proc = parse_string(kv["process"], "process");
  if (auto k = parse_process(proc)) {
    cfg.process = *k;
  } else {
    throw Error("validation-error", "field 'process': unknown process '" + proc + "'");
  }

  if (kv.count("formalism")) {
    const std::string f = parse_string(kv["formalism"], "formalism");
    if (auto parsed = parse_formalism(f)) {
      cfg.formalism = *parsed;
    } else {
      throw Error("validation-error", "field 'formalism': expected sg or bp, got '" + f + "'");
    }
  }

  if (!kv.count("alpha_sq")) {
    throw Error("validation-error", "field 'alpha_sq' is required");
  }
  cfg.alpha_sq = parse_array(kv["alpha_sq"], "alpha_sq");
  if (cfg.alpha_sq.empty()) {
    throw Error("validation-error", "field 'alpha_sq': list must be non-empty");
  }
  for (double a : cfg.alpha_sq) {
    if (a < 0) throw Error("validation-error", "field 'alpha_sq': values must be >= 0");
  }

  if (!kv.count("theta")) {
    throw Error("validation-error", "field 'theta' is required");
  }
  cfg.theta = parse_array(kv["theta"], "theta");
  if (cfg.theta.empty()) {
    throw Error("validation-error", "field 'theta': list must be non-empty");
  }

  if (!kv.count("g")) {
    throw Error("validation-error", "field 'g' is required");
  }
  cfg.g = parse_number(kv["g"], "g");
  if (cfg.g < 0) {
    throw Error("validation-error", "field 'g': coupling must be >= 0");
  }

  const bool single_t = kv.count("t");
  const bool grid_t = kv.count("t_min") || kv.count("t_max") || kv.count("t_count");
  if (single_t == grid_t) {
    throw Error("validation-error", "field 't': give either t or t_min/t_max/t_count");
  }
  if (single_t) {
    const double t = parse_number(kv["t"], "t");
    cfg.t_grid = TimeGrid{t, t, 1, false};
  } else {
    if (!kv.count("t_min") || !kv.count("t_max") || !kv.count("t_count")) {
      throw Error("validation-error", "field 't': t_min, t_max and t_count are all required");
    }
    cfg.t_grid.min = parse_number(kv["t_min"], "t_min");
    cfg.t_grid.max = parse_number(kv["t_max"], "t_max");
    cfg.t_grid.count = static_cast<int>(parse_number(kv["t_count"], "t_count"));
    if (kv.count("t_scale")) {
      const std::string s = parse_string(kv["t_scale"], "t_scale");
      if (s == "log") {
        cfg.t_grid.log_scale = true;
      } else if (s != "lin") {
        throw Error("validation-error", "field 't.scale': expected lin or log");
      }
    }
  }
  if (cfg.t_grid.count < 1) {
    throw Error("validation-error", "field 't.count': must be >= 1");
  }
  if (cfg.t_grid.min > cfg.t_grid.max) {
    throw Error("validation-error", "field 't.min': must be <= t.max");
  }
  if (cfg.t_grid.min < 0) {
    throw Error("validation-error", "field 't.min': must be >= 0");
  }
  if (cfg.t_grid.log_scale && cfg.t_grid.min <= 0) {
    throw Error("validation-error", "field 't.scale': log grid needs t.min > 0");
  }

  if (kv.count("cutoffs")) {
    for (double c : parse_array(kv["cutoffs"], "cutoffs")) {
      if (c < 1 || c != std::floor(c)) {
        throw Error("validation-error", "field 'cutoffs': integer values >= 1 required");
      }
      cfg.cutoffs.push_back(static_cast<int>(c));
    }
    const auto expected = process_roles(cfg.process).size();
    if (cfg.cutoffs.size() != expected) {
      throw Error("validation-error", "field 'cutoffs': expected " +
                                          std::to_string(expected) + " entries");
    }
  }

  if (kv.count("accuracy")) {
    cfg.tol.evolve_accuracy = parse_number(kv["accuracy"], "accuracy");
    if (cfg.tol.evolve_accuracy <= 0) {
      throw Error("validation-error", "field 'accuracy': must be > 0");
    }
  }
  if (kv.count("leakage_threshold")) {
    cfg.tol.leakage_threshold = parse_number(kv["leakage_threshold"], "leakage_threshold");
    if (cfg.tol.leakage_threshold <= 0) {
      throw Error("validation-error", "field 'leakage_threshold': must be > 0");
    }
  }
  if (kv.count("tol_compare")) {
    cfg.tol.compare = parse_number(kv["tol_compare"], "tol_compare");
    if (cfg.tol.compare <= 0) {
      throw Error("validation-error", "field 'tol_compare': must be > 0");
    }
  }
  if (kv.count("output")) {
    cfg.output = parse_string(kv["output"], "output");
  }
  return cfg;
}

SweepConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("parse-error", "cannot open config file '" + path + "'");
  }
  return parse_config_text(in);
}

}  // namespace phasefluct
