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

#include "support.hpp"

using namespace qsw;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel never produced by a passing fn
}

}  // namespace

TEST_CASE("edge list validation") {
  CHECK(code_of([] { Graph::from_edge_list(3, {{0, 3, 1.0}}); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { Graph::from_edge_list(3, {{1, 1, 1.0}}); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { Graph::from_edge_list(3, {{0, 1, 0.0}}); }) == ErrorCode::NonpositiveWeight);
  CHECK(code_of([] { Graph::from_edge_list(3, {{0, 1, -2.0}}); }) ==
        ErrorCode::NonpositiveWeight);
  CHECK(code_of([] { Graph::from_edge_list(3, {{0, 1, 1.0}, {1, 0, 1.0}}); }) ==
        ErrorCode::DuplicateEdge);
}

TEST_CASE("adjacency and weights") {
  const Graph g = Graph::from_edge_list(4, {{0, 1, 1.5}, {2, 1, 0.5}});
  CHECK(g.n_vertices() == 4);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(3) == 0);
  CHECK(g.neighbors(1) == std::vector<std::size_t>{0, 2});
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.weight(1, 0) == 1.5);
  CHECK(g.weight(0, 3) == 0.0);
  CHECK_FALSE(g.line_map().has_value());
}

TEST_CASE("line graph and signed positions") {
  const Graph g = build_line(7, 2.0);
  REQUIRE(g.line_map().has_value());
  const LineIndexMap& map = *g.line_map();
  CHECK(map.half_width() == 3);
  CHECK(map.center() == 3);
  CHECK(map.index_of(-3) == 0);
  CHECK(map.index_of(0) == 3);
  CHECK(map.position_of(6) == 3);
  CHECK(code_of([&] { map.index_of(4); }) == ErrorCode::IndexOutOfRange);
  CHECK(g.edges().size() == 6);
  CHECK(g.weight(2, 3) == 2.0);

  CHECK(code_of([] { build_line(6, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { build_line(1, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { build_line(5, 0.0); }) == ErrorCode::NonpositiveWeight);
}

TEST_CASE("classical generator of a weighted path") {
  const Graph g = Graph::from_edge_list(3, {{0, 1, 2.0}, {1, 2, 0.5}});
  const RealMatrix m = classical_generator(g).entries();
  RealMatrix expected(3, 3);
  expected << -2.0, 2.0, 0.0,
              2.0, -2.5, 0.5,
              0.0, 0.5, -0.5;
  CHECK((m - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generator columns sum to zero on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Graph g = qsw_test::random_connected_graph(rng, 2 + trial % 10);
    const GeneratorMatrix m = classical_generator(g);
    const GeneratorReport r = validate_generator(m, 1e-12, &g);
    CHECK(r.passed);
    CHECK(r.max_column_sum_deviation <= 1e-12);
    CHECK(r.pattern_mismatches == 0);
    CHECK(r.most_negative_off_diagonal == 0.0);
  }
}

TEST_CASE("validate_generator reports each failure") {
  RealMatrix bad(3, 3);
  bad << -1.0, 1.0, 0.0,
         1.0, -1.0, -0.25,
         0.0, 0.0, 0.0;
  const GeneratorReport r = validate_generator(GeneratorMatrix(bad), 1e-12);
  CHECK_FALSE(r.passed);
  CHECK(r.most_negative_off_diagonal == -0.25);
  CHECK(r.max_column_sum_deviation == doctest::Approx(0.25));
  CHECK_FALSE(r.failures.empty());

  const Graph g = Graph::from_edge_list(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  RealMatrix extra = classical_generator(g).entries();
  extra(0, 2) += 0.5;
  extra(2, 2) -= 0.5;
  const GeneratorReport pattern = validate_generator(GeneratorMatrix(extra), 1e-12, &g);
  CHECK_FALSE(pattern.passed);
  CHECK(pattern.pattern_mismatches == 1);
}

TEST_CASE("edge list text format") {
  const Graph g = parse_edge_list(
      "# triangle with a tail\n"
      "vertices 4\n"
      "0 1 1.0\n"
      "1 2\n"
      "2 0 0.5   # trailing comment\n"
      "\n"
      "2 3 3\n");
  CHECK(g.n_vertices() == 4);
  CHECK(g.edges().size() == 4);
  CHECK(g.weight(1, 2) == 1.0);
  CHECK(g.weight(0, 2) == 0.5);
  CHECK(g.weight(3, 2) == 3.0);

  CHECK(code_of([] { parse_edge_list("0 1\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_edge_list("vertices 3\n0 1 abc\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_edge_list("vertices 3\n0 1 -1\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_edge_list("vertices 3\n1 1\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_edge_list("vertices 3\n0 1\n1 0\n"); }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { parse_edge_list("vertices 3\n0 5\n"); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { load_edge_list("/nonexistent/graph.txt"); }) == ErrorCode::Parse);
}
