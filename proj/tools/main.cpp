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

// qsw simulate|sweep|audit|compare
//
// Exit codes: 0 success, 1 audit failure, 2 configuration or input error,
// 3 solver failure or invariant violation.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <thread>

#include <CLI11.hpp>

#include "emit.hpp"
#include "qsw/qsw.h"
#include "scenario.hpp"

namespace qsw_cli {
namespace {

constexpr int kExitAuditFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr double kPopulationSumTolerance = 1e-8;

struct GridPoint {
  double omega = 0.0;
  double t = 0.0;
  std::vector<double> populations;
  qsw_evolution_stats stats{};
};

// Runs every (omega, t) pair, omega-major. Results land in fixed slots so
// the output order never depends on thread scheduling.
std::vector<GridPoint> run_grid(const Scenario& s, std::size_t jobs) {
  std::vector<GridPoint> grid;
  for (double w : s.omega.values) {
    for (double t : s.t.values) grid.push_back({w, t, std::vector<double>(s.dim, 0.0), {}});
  }
  std::vector<qsw_status> status(grid.size(), QSW_OK);
  std::vector<std::string> message(grid.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      GridPoint& g = grid[i];
      status[i] = qsw_walk_evolve(s.walk.get(), g.omega, g.t, s.origin_index, &s.solver,
                                  g.populations.data(), g.populations.size(), &g.stats);
      if (status[i] != QSW_OK) message[i] = qsw_last_error_message();
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(jobs, grid.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (status[i] != QSW_OK) {
      throw SolverError("omega = " + format_number(grid[i].omega) + ", t = " +
                        format_number(grid[i].t) + ": " + qsw_status_name(status[i]) + ": " +
                        message[i]);
    }
    const double sum = std::accumulate(grid[i].populations.begin(), grid[i].populations.end(), 0.0);
    if (std::abs(sum - 1.0) > kPopulationSumTolerance) {
      throw SolverError("populations at omega = " + format_number(grid[i].omega) +
                        " sum to " + format_number(sum));
    }
  }
  return grid;
}

const char* method_name(qsw_method m) {
  switch (m) {
    case QSW_METHOD_MATRIX_EXPONENTIAL: return "matrix-exponential";
    case QSW_METHOD_ADAPTIVE_RK: return "adaptive-rk";
    default: return "auto";
  }
}

void write_config_echo(JsonWriter& w, const ScenarioConfig& cfg, const Scenario& s,
                       const std::string& command) {
  w.key("config_echo").begin_object();
  w.key("command").value(command);
  w.key("graph").value(cfg.graph_source);
  w.key("regime").value(cfg.regime);
  w.key("omega").value(s.omega.text);
  w.key("t").value(s.t.text);
  w.key("origin").value(s.origin_label);
  w.key("method").value(cfg.method);
  w.key("rel_tol").value(cfg.rel_tol);
  w.key("abs_tol").value(cfg.abs_tol);
  w.key("max_step").value(cfg.max_step);
  w.key("amplitude_convention").value(cfg.amplitude);
  w.key("global_l").value(cfg.global_l);
  if (!cfg.jump_spec.empty()) w.key("jump_spec").value(cfg.jump_spec);
  w.end_object();
}

std::string results_json(const ScenarioConfig& cfg, const Scenario& s,
                         const std::vector<GridPoint>& grid, const std::string& command) {
  JsonWriter w;
  w.begin_object();
  write_config_echo(w, cfg, s, command);
  w.key("positions").begin_array(true);
  for (long p : s.positions) w.value(p);
  w.end_array();
  w.key("results").begin_array();
  for (const GridPoint& g : grid) {
    w.begin_object();
    w.key("omega").value(g.omega);
    w.key("t").value(g.t);
    w.key("populations").begin_array(true);
    for (double p : g.populations) w.value(p);
    w.end_array();
    w.key("coherence_l1").value(g.stats.coherence_l1);
    w.key("validation").begin_object();
    w.key("trace_drift").value(g.stats.trace_drift);
    w.key("min_eigenvalue").value(g.stats.min_eigenvalue);
    w.key("hermiticity").value(g.stats.hermiticity);
    w.key("solver_steps").value(static_cast<unsigned long>(g.stats.solver_steps));
    w.key("method").value(method_name(g.stats.method));
    w.key("populations_clamped").value(g.stats.populations_clamped != 0);
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("version").value(qsw_version());
  w.end_object();
  return w.str();
}

std::string results_csv(const Scenario& s, const std::vector<GridPoint>& grid) {
  std::string out = "omega,t,position,population\n";
  for (const GridPoint& g : grid) {
    for (std::size_t i = 0; i < g.populations.size(); ++i) {
      out += format_number(g.omega) + ',' + format_number(g.t) + ',' +
             std::to_string(s.positions[i]) + ',' + format_number(g.populations[i]) + '\n';
    }
  }
  return out;
}

void deliver(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  file << text;
}

OutputFormat format_of(const std::string& f, OutputFormat fallback) {
  if (f.empty()) return fallback;
  if (f == "json") return OutputFormat::Json;
  if (f == "csv") return OutputFormat::Csv;
  throw ConfigError("--format must be json or csv");
}

int cmd_run(const ScenarioConfig& cfg, const std::string& command) {
  const OutputFormat fmt =
      format_of(cfg.format, command == "sweep" ? OutputFormat::Csv : OutputFormat::Json);
  if (command == "sweep" && cfg.omega && cfg.omega->find(':') == std::string::npos) {
    throw ConfigError("sweep needs --omega start:stop:count");
  }
  ScenarioConfig effective = cfg;
  if (command == "sweep" && !cfg.omega) effective.omega = "0:1:11";
  const Scenario s = resolve(effective);
  const auto grid = run_grid(s, cfg.jobs);
  deliver(fmt == OutputFormat::Json ? results_json(effective, s, grid, command)
                                    : results_csv(s, grid),
          cfg.output);
  return 0;
}

int cmd_audit(const ScenarioConfig& cfg) {
  const Scenario s = resolve(cfg);
  int passed = 0;
  char* report = nullptr;
  check(qsw_walk_audit(s.walk.get(), cfg.audit_tol, &passed, &report), "audit");
  const std::string text = std::string(report) + "\n";
  qsw_string_free(report);
  deliver(text, cfg.output);
  if (!passed) {
    std::cerr << "qsw: audit failed for " << cfg.regime << " on " << cfg.graph_source
              << "; offending index tuples are listed in the report\n";
    return kExitAuditFailed;
  }
  return 0;
}

struct Comparison {
  double omega, t, tv_crw, tv_qw, var_sim, var_crw, var_qw;
};

int cmd_compare(const ScenarioConfig& cfg) {
  const Scenario s = resolve(cfg);
  if (!s.is_line) {
    std::cerr << "qsw: NonLineGraph: oracle comparisons need a line:<n>:<gamma> graph\n";
    return kExitConfig;
  }
  if (s.origin_label != 0) {
    throw ConfigError("oracle comparisons assume the walker starts at position 0");
  }
  const auto grid = run_grid(s, cfg.jobs);
  std::vector<Comparison> rows;
  std::vector<double> crw(s.dim), qw(s.dim);
  for (const GridPoint& g : grid) {
    check(qsw_oracle_crw_line(s.dim, s.line_gamma, g.t, crw.data(), nullptr), "CRW oracle");
    check(qsw_oracle_qw_line(s.dim, s.line_gamma, g.t, qw.data(), nullptr), "QW oracle");
    Comparison c{g.omega, g.t, 0, 0, 0, 0, 0};
    check(qsw_total_variation(g.populations.data(), crw.data(), s.dim, &c.tv_crw), "TV");
    check(qsw_total_variation(g.populations.data(), qw.data(), s.dim, &c.tv_qw), "TV");
    check(qsw_variance(g.populations.data(), s.positions.data(), s.dim, &c.var_sim), "variance");
    check(qsw_variance(crw.data(), s.positions.data(), s.dim, &c.var_crw), "variance");
    check(qsw_variance(qw.data(), s.positions.data(), s.dim, &c.var_qw), "variance");
    rows.push_back(c);
  }

  if (format_of(cfg.format, OutputFormat::Csv) == OutputFormat::Json) {
    JsonWriter w;
    w.begin_object();
    write_config_echo(w, cfg, s, "compare");
    w.key("comparisons").begin_array();
    for (const Comparison& c : rows) {
      w.begin_object();
      w.key("omega").value(c.omega);
      w.key("t").value(c.t);
      w.key("tv_vs_crw_oracle").value(c.tv_crw);
      w.key("tv_vs_qw_oracle").value(c.tv_qw);
      w.key("variance_simulated").value(c.var_sim);
      w.key("variance_crw_oracle").value(c.var_crw);
      w.key("variance_qw_oracle").value(c.var_qw);
      w.end_object();
    }
    w.end_array();
    w.key("version").value(qsw_version());
    w.end_object();
    deliver(w.str(), cfg.output);
  } else {
    std::string table =
        "omega,t,tv_vs_crw_oracle,tv_vs_qw_oracle,variance_simulated,variance_crw_oracle,"
        "variance_qw_oracle\n";
    for (const Comparison& c : rows) {
      table += format_number(c.omega) + ',' + format_number(c.t) + ',' + format_number(c.tv_crw) +
               ',' + format_number(c.tv_qw) + ',' + format_number(c.var_sim) + ',' +
               format_number(c.var_crw) + ',' + format_number(c.var_qw) + '\n';
    }
    deliver(table, cfg.output);
  }
  return 0;
}

void add_scenario_flags(CLI::App* cmd, ScenarioConfig& cfg, bool with_grid) {
  cmd->add_option("--graph", cfg.graph_source, "line:<n>[:<gamma>] or an edge-list file")
      ->capture_default_str();
  cmd->add_option("--regime", cfg.regime, "crw | qw | qsw-global | qsw-custom")
      ->capture_default_str();
  cmd->add_option("--jump-spec", cfg.jump_spec, "JSON jump operators for qsw-custom");
  cmd->add_option("--amplitude-convention", cfg.amplitude, "sqrt | literal")
      ->capture_default_str();
  cmd->add_option("--global-l", cfg.global_l, "full | offdiagonal")->capture_default_str();
  cmd->add_option("--output", cfg.output, "output path (default: stdout)");
  if (!with_grid) return;
  cmd->add_option("--omega", cfg.omega, "value or start:stop:count (default: 0 for qw, else 1)");
  cmd->add_option("--t", cfg.t, "time, value or start:stop:count")->capture_default_str();
  cmd->add_option("--origin", cfg.origin, "start position (line) or vertex (edge list)");
  cmd->add_option("--method", cfg.method, "auto | matrix-exponential | adaptive-rk")
      ->capture_default_str();
  cmd->add_option("--rel-tol", cfg.rel_tol)->capture_default_str();
  cmd->add_option("--abs-tol", cfg.abs_tol)->capture_default_str();
  cmd->add_option("--max-step", cfg.max_step, "0: unbounded")->capture_default_str();
  cmd->add_option("--validate-every", cfg.validate_every)->capture_default_str();
  cmd->add_option("--format", cfg.format, "json | csv");
  cmd->add_option("--jobs", cfg.jobs, "parallel grid points")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

int run(int argc, char** argv) {
  CLI::App app{"Quantum stochastic walks on graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qsw_version());

  ScenarioConfig cfg;
  auto* simulate = app.add_subcommand("simulate", "propagate a walk over an (omega, t) grid");
  auto* sweep = app.add_subcommand("sweep", "omega sweep emitted as long-format CSV");
  auto* audit = app.add_subcommand("audit", "check axiom formulas against the generator tensor");
  auto* compare = app.add_subcommand("compare", "distances to the line oracles");
  add_scenario_flags(simulate, cfg, true);
  add_scenario_flags(sweep, cfg, true);
  add_scenario_flags(audit, cfg, false);
  audit->add_option("--tol", cfg.audit_tol, "max deviation")->capture_default_str();
  add_scenario_flags(compare, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) return cmd_run(cfg, "simulate");
    if (*sweep) return cmd_run(cfg, "sweep");
    if (*audit) return cmd_audit(cfg);
    return cmd_compare(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "qsw: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    std::cerr << "qsw: " << e.what() << '\n';
    return kExitSolver;
  }
}

}  // namespace
}  // namespace qsw_cli

int main(int argc, char** argv) { return qsw_cli::run(argc, argv); }
