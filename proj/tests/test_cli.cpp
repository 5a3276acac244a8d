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

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run qsw(const std::string& args) {
  const std::string cmd = std::string(QSW_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string scratch(const std::string& name) { return std::string(QSW_SCRATCH_DIR) + "/" + name; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("simulate emits the JSON schema") {
  const Run r = qsw("simulate --graph line:11 --regime qsw-global --omega 0.5 --t 0:1:3");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.contains("config_echo"));
  CHECK(doc["version"] == "0.1.0");
  CHECK(doc["positions"].size() == 11);
  REQUIRE(doc["results"].size() == 3);
  const auto& last = doc["results"][2];
  CHECK(last["omega"] == 0.5);
  CHECK(last["t"] == 1.0);
  double sum = 0.0;
  for (double p : last["populations"]) sum += p;
  CHECK(std::abs(sum - 1.0) <= 1e-12);
  CHECK(last["validation"]["trace_drift"].get<double>() <= 1e-12);
  CHECK(last["validation"].contains("min_eigenvalue"));
  CHECK(last["coherence_l1"].get<double>() > 0.0);
  // t = 0 returns the initial state.
  CHECK(doc["results"][0]["populations"][5] == 1.0);
}

TEST_CASE("sweep emits long-format CSV and needs an omega grid") {
  const Run r = qsw("sweep --graph line:5 --regime crw --omega 0:1:3 --t 1");
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "omega,t,position,population");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 15);
  CHECK(qsw("sweep --graph line:5 --omega 0.5").status == 2);
  CHECK(qsw("sweep --graph line:5 --omega 0:1:1").status == 2);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(qsw("simulate --regime nope").status == 2);
  CHECK(qsw("simulate --omega 1.5").status == 2);
  CHECK(qsw("simulate --t -1").status == 2);
  CHECK(qsw("simulate --graph line:4").status == 2);
  CHECK(qsw("simulate --graph line:5 --origin 7").status == 2);
  CHECK(qsw("simulate --no-such-flag").status == 2);
  CHECK(qsw("simulate --format xml --graph line:5").status == 2);
  CHECK(qsw("simulate --graph /nonexistent/edges.txt").status == 2);
  CHECK(qsw("simulate --regime qsw-custom --graph line:5").status == 2);
  CHECK(qsw("").status == 2);
}

TEST_CASE("solver failures exit with 3") {
  // Tolerances this loose let the adaptive integrator leave the state space.
  const Run r = qsw(
      "simulate --graph line:7 --regime qsw-global --t 6 --method adaptive-rk "
      "--rel-tol 0.9 --abs-tol 0.9");
  CHECK(r.status == 3);
}

TEST_CASE("edge-list graphs and custom operators") {
  const std::string edges = scratch("cli_square.txt");
  write_file(edges, "vertices 4\n0 1\n1 2\n2 3\n3 0 0.5\n");
  const std::string spec = scratch("cli_jumps.json");
  write_file(spec, R"({"operators": [[[1, 0, 1.0, 0.0]], [[2, 1, 0.5, 0.0], [3, 2, 0.5, 0.0]]]})");
  const Run r = qsw("simulate --graph " + edges + " --regime qsw-custom --jump-spec " + spec +
                    " --origin 0 --t 2 --format csv");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("omega,t,position,population\n1,2,0,", 0) == 0);

  write_file(spec, R"({"operators": [[[9, 0, 1.0, 0.0]]]})");
  CHECK(qsw("simulate --graph " + edges + " --regime qsw-custom --jump-spec " + spec).status == 2);
  write_file(spec, "{not json");
  CHECK(qsw("simulate --graph " + edges + " --regime qsw-custom --jump-spec " + spec).status == 2);
  CHECK(qsw("compare --graph " + edges).status == 2);
}

TEST_CASE("audit verdicts") {
  CHECK(qsw("audit --graph line:5 --regime crw").status == 0);
  CHECK(qsw("audit --graph line:5 --regime qw").status == 0);
  const Run global = qsw("audit --graph line:5 --regime qsw-global");
  CHECK(global.status == 1);
  const auto doc = nlohmann::json::parse(global.out);
  CHECK(doc["passed"] == false);
  CHECK(doc["max_axiom_deviation"].get<double>() <= 1e-10);
  CHECK_FALSE(doc["nonlocal_examples"].empty());
}

TEST_CASE("compare against the line oracles") {
  const Run r = qsw("compare --graph line:61 --regime crw --omega 1 --t 5 --format json");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  const auto& c = doc["comparisons"][0];
  CHECK(c["tv_vs_crw_oracle"].get<double>() <= 1e-8);
  CHECK(c["variance_crw_oracle"].get<double>() == doctest::Approx(10.0));
}

TEST_CASE("parallel grids are ordered and reproducible") {
  const std::string a = scratch("cli_jobs1.csv");
  const std::string b = scratch("cli_jobs3.csv");
  const std::string base = "sweep --graph line:9 --regime qsw-global --omega 0:1:4 --t 0.5:2:3";
  REQUIRE(qsw(base + " --jobs 1 --output " + a).status == 0);
  REQUIRE(qsw(base + " --jobs 3 --output " + b).status == 0);
  const std::string ta = read_file(a);
  CHECK(ta.size() > 100);
  CHECK(ta == read_file(b));
}
