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

#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qsw {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::NonHermitianSource: return "NonHermitianSource";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OmegaOutOfRange: return "OmegaOutOfRange";
    case ErrorCode::IndicesNotDistinct: return "IndicesNotDistinct";
    case ErrorCode::IsolatedVertexWithoutHold: return "IsolatedVertexWithoutHold";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::StateInvariantViolated: return "StateInvariantViolated";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonLineGraph: return "NonLineGraph";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

std::size_t LineIndexMap::index_of(long position) const {
  if (position < -half_width() || position > half_width()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "line position " + std::to_string(position) +
                    " outside [-" + std::to_string(half_width()) + ", " +
                    std::to_string(half_width()) + "]");
  }
  return static_cast<std::size_t>(position + half_width());
}

Graph Graph::from_edge_list(std::size_t n_vertices,
                            const std::vector<Edge>& edges) {
  if (n_vertices == 0) {
    throw Error(ErrorCode::InvalidArgument, "graph needs at least one vertex");
  }
  Graph g;
  g.n_vertices_ = n_vertices;
  g.adjacency_.resize(n_vertices);
  const auto n = static_cast<Eigen::Index>(n_vertices);
  g.weights_ = RealMatrix::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.u >= n_vertices || e.v >= n_vertices) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") references a vertex >= " + std::to_string(n_vertices));
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::SelfLoop,
                  "self-loop at vertex " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::NonpositiveWeight,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") has non-positive weight");
    }
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    if (g.weights_(u, v) != 0.0) {
      throw Error(ErrorCode::DuplicateEdge,
                  "duplicate edge {" + std::to_string(e.u) + ", " +
                      std::to_string(e.v) + "}");
    }
    g.weights_(u, v) = e.weight;
    g.weights_(v, u) = e.weight;
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
    g.edges_.push_back(e);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  return weight(u, v) != 0.0;
}

double Graph::weight(std::size_t u, std::size_t v) const {
  if (u >= n_vertices_ || v >= n_vertices_) {
    throw Error(ErrorCode::IndexOutOfRange, "vertex index out of range");
  }
  return weights_(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
}

Graph build_line(std::size_t n_sites, double gamma) {
  if (n_sites < 3 || n_sites % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "line needs an odd number of sites >= 3, got " +
                    std::to_string(n_sites));
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::NonpositiveWeight, "line rate gamma must be > 0");
  }
  std::vector<Edge> edges;
  edges.reserve(n_sites - 1);
  for (std::size_t j = 0; j + 1 < n_sites; ++j) edges.push_back({j, j + 1, gamma});
  Graph g = Graph::from_edge_list(n_sites, edges);
  g.line_map_ = LineIndexMap{n_sites};
  return g;
}

GeneratorMatrix::GeneratorMatrix(RealMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "generator must be square and non-empty");
  }
}

GeneratorMatrix classical_generator(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_vertices());
  RealMatrix m = RealMatrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    m(u, v) += e.weight;
    m(v, u) += e.weight;
    m(u, u) -= e.weight;
    m(v, v) -= e.weight;
  }
  return GeneratorMatrix(std::move(m));
}

GeneratorReport validate_generator(const GeneratorMatrix& m, double tol,
                                   const Graph* reference) {
  GeneratorReport report;
  const RealMatrix& e = m.entries();
  const auto n = e.rows();
  for (Eigen::Index b = 0; b < n; ++b) {
    report.max_column_sum_deviation =
        std::max(report.max_column_sum_deviation, std::abs(e.col(b).sum()));
    for (Eigen::Index a = 0; a < n; ++a) {
      if (a != b) {
        report.most_negative_off_diagonal =
            std::min(report.most_negative_off_diagonal, e(a, b));
      }
    }
  }
  if (report.max_column_sum_deviation > tol) {
    report.failures.push_back("column sums deviate from zero by " +
                              std::to_string(report.max_column_sum_deviation));
  }
  if (report.most_negative_off_diagonal < -tol) {
    report.failures.push_back("negative off-diagonal entry " +
                              std::to_string(report.most_negative_off_diagonal));
  }
  if (reference != nullptr) {
    if (reference->n_vertices() != m.dim()) {
      report.failures.push_back("dimension differs from reference graph");
    } else {
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
          if (a == b) continue;
          const bool nonzero = std::abs(e(a, b)) > tol;
          const bool edge = reference->adjacent(static_cast<std::size_t>(a),
                                                static_cast<std::size_t>(b));
          if (nonzero != edge) ++report.pattern_mismatches;
        }
      }
      if (report.pattern_mismatches != 0) {
        report.failures.push_back(std::to_string(report.pattern_mismatches) +
                                  " entries disagree with the graph adjacency");
      }
    }
  }
  report.passed = report.failures.empty();
  return report;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::Parse,
              "edge list line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n_vertices;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "vertices") {
      long long count = 0;
      if (n_vertices || !(fields >> count) || count <= 0) {
        parse_fail(line_no, "expected a single 'vertices N' header with N > 0");
      }
      n_vertices = static_cast<std::size_t>(count);
    } else {
      if (!n_vertices) parse_fail(line_no, "edge before 'vertices N' header");
      std::istringstream row(line);
      long long u = -1;
      long long v = -1;
      if (!(row >> u >> v) || u < 0 || v < 0) {
        parse_fail(line_no, "expected 'u v [weight]' with non-negative indices");
      }
      double w = 1.0;
      if (!(row >> w)) {
        if (!row.eof()) parse_fail(line_no, "malformed weight");
        w = 1.0;
      }
      std::string rest;
      if (row.clear(), row >> rest) parse_fail(line_no, "trailing tokens");
      if (!(w > 0.0) || !std::isfinite(w)) parse_fail(line_no, "weight must be > 0");
      if (u == v) parse_fail(line_no, "self-loop");
      edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), w});
    }
  }
  if (!n_vertices) parse_fail(line_no, "missing 'vertices N' header");
  return Graph::from_edge_list(*n_vertices, edges);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::Parse, "cannot open edge list '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_edge_list(buf.str());
}

}  // namespace qsw
