// Copyright 2026 The qsw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qsw_cli {

namespace {

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(std::string("invalid ") + what + " '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw ConfigError(std::string("invalid ") + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

qsw_regime regime_of(const std::string& r) {
  if (r == "crw") return QSW_REGIME_CRW;
  if (r == "qw") return QSW_REGIME_QW;
  if (r == "qsw-global") return QSW_REGIME_QSW_GLOBAL;
  if (r == "qsw-custom") return QSW_REGIME_QSW_CUSTOM;
  throw ConfigError("unknown regime '" + r + "' (crw, qw, qsw-global, qsw-custom)");
}

void check_config(qsw_status status, const char* context) {
  if (status != QSW_OK) {
    throw ConfigError(std::string(context) + ": " + qsw_last_error_message());
  }
}

GraphHandle load_graph(const std::string& source, bool& is_line, double& gamma) {
  qsw_graph* g = nullptr;
  if (source.rfind("line:", 0) == 0) {
    const auto parts = split(source, ':');
    if (parts.size() < 2 || parts.size() > 3) {
      throw ConfigError("graph source must be line:<n>[:<gamma>]");
    }
    const double n = parse_number(parts[1], "line size");
    if (n < 0 || n != std::floor(n)) throw ConfigError("line size must be a whole number");
    gamma = parts.size() == 3 ? parse_number(parts[2], "line rate") : 1.0;
    check_config(qsw_graph_create_line(static_cast<std::size_t>(n), gamma, &g), "line graph");
    is_line = true;
  } else {
    check_config(qsw_graph_load_edge_list(source.c_str(), &g), "edge list");
    is_line = false;
  }
  return GraphHandle(g);
}

// {"operators": [[[row, col, re, im], ...], ...]}
std::vector<qsw_jump_entry> load_jump_spec(const std::string& path, std::size_t& n_operators) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open jump-operator spec '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(file);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("jump-operator spec: " + std::string(e.what()));
  }
  std::vector<qsw_jump_entry> entries;
  try {
    const auto& ops = doc.at("operators");
    n_operators = ops.size();
    for (std::size_t k = 0; k < ops.size(); ++k) {
      for (const auto& e : ops[k]) {
        if (e.size() != 4) throw ConfigError("jump entries must be [row, col, re, im]");
        entries.push_back({k, e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                           e[2].get<double>(), e[3].get<double>()});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("jump-operator spec: " + std::string(e.what()));
  }
  return entries;
}

qsw_method method_of(const std::string& m) {
  if (m == "auto") return QSW_METHOD_AUTO;
  if (m == "matrix-exponential") return QSW_METHOD_MATRIX_EXPONENTIAL;
  if (m == "adaptive-rk") return QSW_METHOD_ADAPTIVE_RK;
  throw ConfigError("unknown method '" + m + "' (auto, matrix-exponential, adaptive-rk)");
}

}  // namespace

void check(qsw_status status, const char* context) {
  if (status != QSW_OK) {
    throw SolverError(std::string(context) + ": " + qsw_status_name(status) + ": " +
                      qsw_last_error_message());
  }
}

SweepSpec parse_sweep(const std::string& text, const char* what) {
  SweepSpec spec;
  spec.text = text;
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    spec.values.push_back(parse_number(parts[0], what));
    return spec;
  }
  if (parts.size() != 3) {
    throw ConfigError(std::string(what) + " sweep must be start:stop:count");
  }
  const double start = parse_number(parts[0], what);
  const double stop = parse_number(parts[1], what);
  const double count = parse_number(parts[2], "sweep count");
  if (count != std::floor(count) || count < 2) {
    throw ConfigError(std::string(what) + " sweep count must be an integer >= 2");
  }
  const auto n = static_cast<std::size_t>(count);
  for (std::size_t i = 0; i < n; ++i) {
    // Endpoints are hit exactly.
    spec.values.push_back(i + 1 == n ? stop
                                     : start + (stop - start) * static_cast<double>(i) /
                                                   static_cast<double>(n - 1));
  }
  return spec;
}

const char* default_omega(const std::string& regime) {
  return regime == "qw" ? "0" : "1";
}

Scenario resolve(const ScenarioConfig& cfg) {
  Scenario s;
  const qsw_regime regime = regime_of(cfg.regime);
  s.graph = load_graph(cfg.graph_source, s.is_line, s.line_gamma);
  s.dim = qsw_graph_vertex_count(s.graph.get());

  if (cfg.amplitude != "sqrt" && cfg.amplitude != "literal") {
    throw ConfigError("--amplitude-convention must be sqrt or literal");
  }
  if (cfg.global_l != "full" && cfg.global_l != "offdiagonal") {
    throw ConfigError("--global-l must be full or offdiagonal");
  }
  qsw_walk_options options;
  qsw_walk_options_default(&options);
  options.amplitude = cfg.amplitude == "literal" ? QSW_AMPLITUDE_LITERAL : QSW_AMPLITUDE_SQRT;
  options.global_shape = cfg.global_l == "offdiagonal" ? QSW_GLOBAL_OFF_DIAGONAL : QSW_GLOBAL_FULL;

  qsw_walk* w = nullptr;
  if (regime == QSW_REGIME_QSW_CUSTOM) {
    if (cfg.jump_spec.empty()) throw ConfigError("qsw-custom needs --jump-spec <file>");
    std::size_t n_ops = 0;
    const auto entries = load_jump_spec(cfg.jump_spec, n_ops);
    check_config(qsw_walk_create_custom(s.graph.get(), entries.data(), entries.size(), n_ops, &w),
                 "custom jump operators");
  } else {
    if (!cfg.jump_spec.empty()) throw ConfigError("--jump-spec only applies to qsw-custom");
    check_config(qsw_walk_create(s.graph.get(), regime, &options, &w), "walk");
  }
  s.walk = WalkHandle(w);

  if (s.is_line) {
    for (std::size_t i = 0; i < s.dim; ++i) {
      long p = 0;
      check(qsw_graph_line_position(s.graph.get(), i, &p), "line position");
      s.positions.push_back(p);
    }
    s.origin_label = cfg.origin.value_or(0);
    if (qsw_graph_line_index(s.graph.get(), s.origin_label, &s.origin_index) != QSW_OK) {
      throw ConfigError("origin " + std::to_string(s.origin_label) + " is not on the line");
    }
  } else {
    for (std::size_t i = 0; i < s.dim; ++i) s.positions.push_back(static_cast<long>(i));
    s.origin_label = cfg.origin.value_or(0);
    if (s.origin_label < 0 || static_cast<std::size_t>(s.origin_label) >= s.dim) {
      throw ConfigError("origin vertex " + std::to_string(s.origin_label) + " out of range");
    }
    s.origin_index = static_cast<std::size_t>(s.origin_label);
  }

  s.omega = parse_sweep(cfg.omega.value_or(default_omega(cfg.regime)), "omega");
  for (double w_value : s.omega.values) {
    if (w_value < 0.0 || w_value > 1.0) throw ConfigError("omega must lie in [0, 1]");
  }
  s.t = parse_sweep(cfg.t, "t");
  for (double t_value : s.t.values) {
    if (t_value < 0.0) throw ConfigError("t must be >= 0");
  }

  qsw_solver_options_default(&s.solver);
  s.solver.method = method_of(cfg.method);
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_step < 0.0) {
    throw ConfigError("solver tolerances must be > 0 and --max-step >= 0");
  }
  s.solver.rel_tol = cfg.rel_tol;
  s.solver.abs_tol = cfg.abs_tol;
  s.solver.max_step = cfg.max_step;
  s.solver.validate_every = cfg.validate_every;
  return s;
}

}  // namespace qsw_cli
