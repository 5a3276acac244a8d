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

// Exercises the shared library through its public header only.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numeric>
#include <string>
#include <vector>

#include "qsw/qsw.h"

TEST_CASE("version and status names") {
  CHECK(std::string(qsw_version()) == "0.1.0");
  CHECK(std::string(qsw_status_name(QSW_OK)) == "OK");
  CHECK(std::string(qsw_status_name(QSW_ERR_SELF_LOOP)) == "SelfLoop");
  CHECK(std::string(qsw_status_name(QSW_ERR_NULL_ARGUMENT)) == "NullArgument");
}

TEST_CASE("graph construction reports errors as codes") {
  qsw_graph* g = nullptr;
  const qsw_edge loop[] = {{1, 1, 1.0}};
  CHECK(qsw_graph_create(3, loop, 1, &g) == QSW_ERR_SELF_LOOP);
  CHECK(g == nullptr);
  CHECK(std::strlen(qsw_last_error_message()) > 0);

  const qsw_edge dup[] = {{0, 1, 1.0}, {1, 0, 2.0}};
  CHECK(qsw_graph_create(3, dup, 2, &g) == QSW_ERR_DUPLICATE_EDGE);
  const qsw_edge neg[] = {{0, 1, -1.0}};
  CHECK(qsw_graph_create(3, neg, 1, &g) == QSW_ERR_NONPOSITIVE_WEIGHT);
  const qsw_edge far[] = {{0, 9, 1.0}};
  CHECK(qsw_graph_create(3, far, 1, &g) == QSW_ERR_INDEX_OUT_OF_RANGE);
  CHECK(qsw_graph_create(3, loop, 1, nullptr) == QSW_ERR_NULL_ARGUMENT);
  CHECK(qsw_graph_parse_edge_list("vertices 2\n0 1 x\n", &g) == QSW_ERR_PARSE);
  CHECK(qsw_graph_load_edge_list("/nonexistent/edges.txt", &g) == QSW_ERR_PARSE);
  CHECK(qsw_graph_create_line(4, 1.0, &g) == QSW_ERR_INVALID_ARGUMENT);
}

TEST_CASE("line graph through the C API") {
  qsw_graph* g = nullptr;
  REQUIRE(qsw_graph_create_line(5, 1.0, &g) == QSW_OK);
  CHECK(qsw_graph_vertex_count(g) == 5);
  CHECK(qsw_graph_edge_count(g) == 4);
  CHECK(qsw_graph_is_line(g) == 1);
  std::size_t idx = 99;
  CHECK(qsw_graph_line_index(g, -2, &idx) == QSW_OK);
  CHECK(idx == 0);
  CHECK(qsw_graph_line_index(g, 3, &idx) == QSW_ERR_INDEX_OUT_OF_RANGE);
  long pos = 0;
  CHECK(qsw_graph_line_position(g, 4, &pos) == QSW_OK);
  CHECK(pos == 2);

  std::vector<double> m(25);
  CHECK(qsw_graph_generator(g, m.data(), 24) == QSW_ERR_LENGTH_MISMATCH);
  REQUIRE(qsw_graph_generator(g, m.data(), m.size()) == QSW_OK);
  CHECK(m[0] == -1.0);
  CHECK(m[1] == 1.0);   // M(1, 0)
  CHECK(m[6] == -2.0);  // M(1, 1)
  qsw_graph_destroy(g);

  qsw_graph* e = nullptr;
  REQUIRE(qsw_graph_parse_edge_list("vertices 3\n0 1\n1 2 2.5\n", &e) == QSW_OK);
  CHECK(qsw_graph_is_line(e) == 0);
  CHECK(qsw_graph_line_index(e, 0, &idx) == QSW_ERR_NON_LINE_GRAPH);
  qsw_graph_destroy(e);
}

TEST_CASE("evolution through the C API") {
  qsw_graph* g = nullptr;
  REQUIRE(qsw_graph_create_line(21, 1.0, &g) == QSW_OK);
  qsw_walk* w = nullptr;
  CHECK(qsw_walk_create(g, QSW_REGIME_QSW_CUSTOM, nullptr, &w) == QSW_ERR_INVALID_ARGUMENT);
  REQUIRE(qsw_walk_create(g, QSW_REGIME_QSW_GLOBAL, nullptr, &w) == QSW_OK);
  CHECK(qsw_walk_dim(w) == 21);
  CHECK(qsw_walk_operator_count(w) == 1);

  std::vector<double> p(21);
  qsw_evolution_stats stats{};
  REQUIRE(qsw_walk_evolve(w, 0.5, 1.0, 10, nullptr, p.data(), p.size(), &stats) == QSW_OK);
  CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-12);
  CHECK(p[9] == doctest::Approx(p[11]).epsilon(1e-12));
  CHECK(stats.trace_drift <= 1e-12);
  CHECK(stats.min_eigenvalue >= -1e-9);
  CHECK(stats.coherence_l1 > 0.0);
  CHECK(stats.method == QSW_METHOD_MATRIX_EXPONENTIAL);

  qsw_solver_options rk;
  qsw_solver_options_default(&rk);
  rk.method = QSW_METHOD_ADAPTIVE_RK;
  std::vector<double> q(21);
  REQUIRE(qsw_walk_evolve(w, 0.5, 1.0, 10, &rk, q.data(), q.size(), &stats) == QSW_OK);
  CHECK(stats.method == QSW_METHOD_ADAPTIVE_RK);
  CHECK(stats.solver_steps > 0);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - q[i]) <= 1e-8);

  CHECK(qsw_walk_evolve(w, 1.5, 1.0, 10, nullptr, p.data(), p.size(), nullptr) ==
        QSW_ERR_OMEGA_OUT_OF_RANGE);
  CHECK(qsw_walk_evolve(w, 0.5, 1.0, 21, nullptr, p.data(), p.size(), nullptr) ==
        QSW_ERR_INDEX_OUT_OF_RANGE);
  CHECK(qsw_walk_evolve(w, 0.5, 1.0, 0, nullptr, p.data(), 3, nullptr) ==
        QSW_ERR_LENGTH_MISMATCH);
  CHECK(qsw_walk_evolve(w, 0.5, 1.0, 0, nullptr, nullptr, 21, nullptr) == QSW_ERR_NULL_ARGUMENT);
  qsw_walk_destroy(w);
  qsw_graph_destroy(g);
}

TEST_CASE("custom jump operators") {
  qsw_graph* g = nullptr;
  REQUIRE(qsw_graph_create_line(3, 1.0, &g) == QSW_OK);
  // Two one-way hops towards vertex 2.
  const qsw_jump_entry entries[] = {{0, 1, 0, 1.0, 0.0}, {1, 2, 1, 1.0, 0.0}};
  qsw_walk* w = nullptr;
  CHECK(qsw_walk_create_custom(g, entries, 2, 1, &w) == QSW_ERR_INDEX_OUT_OF_RANGE);
  const qsw_jump_entry outside[] = {{0, 3, 0, 1.0, 0.0}};
  CHECK(qsw_walk_create_custom(g, outside, 1, 1, &w) == QSW_ERR_INDEX_OUT_OF_RANGE);
  REQUIRE(qsw_walk_create_custom(g, entries, 2, 2, &w) == QSW_OK);
  CHECK(qsw_walk_operator_count(w) == 2);
  std::vector<double> p(3);
  REQUIRE(qsw_walk_evolve(w, 1.0, 50.0, 0, nullptr, p.data(), 3, nullptr) == QSW_OK);
  CHECK(p[2] > 0.999);
  qsw_walk_destroy(w);
  qsw_graph_destroy(g);
}

TEST_CASE("audit through the C API") {
  qsw_graph* g = nullptr;
  REQUIRE(qsw_graph_create_line(5, 1.0, &g) == QSW_OK);
  for (qsw_regime r : {QSW_REGIME_CRW, QSW_REGIME_QW, QSW_REGIME_QSW_GLOBAL}) {
    qsw_walk* w = nullptr;
    REQUIRE(qsw_walk_create(g, r, nullptr, &w) == QSW_OK);
    int passed = -1;
    char* json = nullptr;
    REQUIRE(qsw_walk_audit(w, 1e-10, &passed, &json) == QSW_OK);
    REQUIRE(json != nullptr);
    const std::string text(json);
    qsw_string_free(json);
    CHECK(text.find("\"elements_scanned\": 625") != std::string::npos);
    CHECK(passed == (r == QSW_REGIME_QSW_GLOBAL ? 0 : 1));
    qsw_walk_destroy(w);
  }
  qsw_graph_destroy(g);
}

TEST_CASE("oracles through the C API") {
  std::vector<double> crw(61), qw(61);
  double tail = -1.0;
  REQUIRE(qsw_oracle_crw_line(61, 1.0, 5.0, crw.data(), &tail) == QSW_OK);
  CHECK(tail >= 0.0);
  CHECK(tail < 1e-12);
  REQUIRE(qsw_oracle_qw_line(61, 1.0, 5.0, qw.data(), nullptr) == QSW_OK);
  CHECK(qw[30] == doctest::Approx(0.060484400236269091498).epsilon(1e-12));
  double tv = 0.0;
  REQUIRE(qsw_total_variation(crw.data(), qw.data(), 61, &tv) == QSW_OK);
  CHECK(tv > 0.5);
  std::vector<long> pos(61);
  std::iota(pos.begin(), pos.end(), -30L);
  double var = 0.0;
  REQUIRE(qsw_variance(qw.data(), pos.data(), 61, &var) == QSW_OK);
  CHECK(var == doctest::Approx(50.0).epsilon(1e-10));
  CHECK(qsw_oracle_crw_line(60, 1.0, 5.0, crw.data(), nullptr) == QSW_ERR_INVALID_ARGUMENT);
}
