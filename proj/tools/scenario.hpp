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

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsw/qsw.h"

namespace qsw_cli {

/// Raised for anything wrong with the command line or its input files;
/// maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the library fails while running a valid scenario; maps to
/// exit code 3.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphDeleter {
  void operator()(qsw_graph* g) const { qsw_graph_destroy(g); }
};
struct WalkDeleter {
  void operator()(qsw_walk* w) const { qsw_walk_destroy(w); }
};
using GraphHandle = std::unique_ptr<qsw_graph, GraphDeleter>;
using WalkHandle = std::unique_ptr<qsw_walk, WalkDeleter>;

/// A single value or an inclusive linear grid `start:stop:count`.
struct SweepSpec {
  std::string text;
  std::vector<double> values;
};

/// Parses `value` or `start:stop:count` (count >= 2). Throws ConfigError.
SweepSpec parse_sweep(const std::string& text, const char* what);

enum class OutputFormat { Json, Csv };

struct ScenarioConfig {
  std::string graph_source = "line:61:1";
  std::string regime = "crw";
  std::optional<std::string> omega;  // default depends on the regime
  std::string t = "5";
  std::optional<long> origin;        // line position, or vertex index
  std::string method = "auto";
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_step = 0.0;
  std::size_t validate_every = 64;
  std::string amplitude = "sqrt";
  std::string global_l = "full";
  std::string jump_spec;
  std::size_t jobs = 1;
  std::string output;
  std::string format;  // empty: the command's default
  double audit_tol = 1e-10;
};

/// Graph, walk and grid resolved from a ScenarioConfig.
struct Scenario {
  GraphHandle graph;
  WalkHandle walk;
  bool is_line = false;
  double line_gamma = 0.0;
  std::size_t dim = 0;
  std::size_t origin_index = 0;
  long origin_label = 0;
  std::vector<long> positions;  // signed positions on a line, else vertex ids
  SweepSpec omega;
  SweepSpec t;
  qsw_solver_options solver{};
};

Scenario resolve(const ScenarioConfig& cfg);

const char* default_omega(const std::string& regime);

/// Throws SolverError carrying the library's message.
void check(qsw_status status, const char* context);

}  // namespace qsw_cli
