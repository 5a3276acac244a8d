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
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace qsw {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 1.0;
};

/// Maps signed positions -(n-1)/2 .. +(n-1)/2 of a truncated line onto
/// contiguous storage indices.
struct LineIndexMap {
  std::size_t n_sites = 0;

  long half_width() const { return static_cast<long>(n_sites / 2); }
  std::size_t center() const { return n_sites / 2; }
  std::size_t index_of(long position) const;
  long position_of(std::size_t index) const {
    return static_cast<long>(index) - half_width();
  }
};

/// Weighted undirected graph without self-loops or parallel edges.
/// Immutable once constructed.
class Graph {
 public:
  /// Builds a graph from an edge list. Throws IndexOutOfRange, SelfLoop,
  /// DuplicateEdge or NonpositiveWeight.
  static Graph from_edge_list(std::size_t n_vertices,
                              const std::vector<Edge>& edges);

  std::size_t n_vertices() const { return n_vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }
  bool adjacent(std::size_t u, std::size_t v) const;
  /// Weight of edge {u, v}, or 0 when the vertices are not connected.
  double weight(std::size_t u, std::size_t v) const;

  /// Set when the graph was produced by build_line.
  const std::optional<LineIndexMap>& line_map() const { return line_map_; }

 private:
  friend Graph build_line(std::size_t n_sites, double gamma);

  std::size_t n_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  RealMatrix weights_;
  std::optional<LineIndexMap> line_map_;
};

/// Path graph of n_sites vertices (odd, >= 3), every edge carrying rate gamma.
Graph build_line(std::size_t n_sites, double gamma);

/// The classical generator M with dp/dt = M p: off-diagonal M(a, b) is the
/// hopping rate b -> a and every column sums to zero.
class GeneratorMatrix {
 public:
  /// Wraps an arbitrary square matrix; use validate_generator to check it.
  explicit GeneratorMatrix(RealMatrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const RealMatrix& entries() const { return entries_; }
  double operator()(std::size_t a, std::size_t b) const {
    return entries_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

 private:
  RealMatrix entries_;
};

/// M = -gamma * Laplacian: M(a, b) = gamma_ab for neighbours, M(a, a) = -sum of
/// incident rates.
GeneratorMatrix classical_generator(const Graph& g);

struct GeneratorReport {
  double max_column_sum_deviation = 0.0;
  double most_negative_off_diagonal = 0.0;  // 0 when none is negative
  std::size_t pattern_mismatches = 0;       // only with a reference graph
  bool passed = false;
  std::vector<std::string> failures;
};

GeneratorReport validate_generator(const GeneratorMatrix& m, double tol,
                                   const Graph* reference = nullptr);

/// Parses the edge-list text format:
///
///     # comment
///     vertices 5
///     0 1 1.0
///     1 2        (weight defaults to 1)
///
/// Throws Error{Parse} on malformed lines and the Graph construction errors
/// on invalid content.
Graph parse_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);

}  // namespace qsw
