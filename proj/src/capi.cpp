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

#include "qsw/qsw.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "graph.hpp"
#include "oracles.hpp"
#include "version.hpp"
#include "walk.hpp"

struct qsw_graph {
  qsw::Graph graph;
};

struct qsw_walk {
  qsw::Walk walk;
};

namespace {

thread_local std::string g_last_error;

qsw_status to_status(qsw::ErrorCode code) {
  // The first fifteen codes share their numeric values.
  return static_cast<qsw_status>(static_cast<int>(code));
}

qsw_status fail(qsw_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
qsw_status guarded(F&& body) {
  try {
    body();
    return QSW_OK;
  } catch (const qsw::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QSW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QSW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QSW_ERR_INTERNAL, "unknown error");
  }
}

#define QSW_REQUIRE(ptr)                                                  \
  do {                                                                    \
    if ((ptr) == nullptr) return fail(QSW_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

qsw::WalkOptions walk_options(const qsw_walk_options* o) {
  qsw::WalkOptions w;
  if (o == nullptr) return w;
  w.amplitude = o->amplitude == QSW_AMPLITUDE_LITERAL ? qsw::AmplitudeConvention::Literal
                                                      : qsw::AmplitudeConvention::Sqrt;
  w.global_shape = o->global_shape == QSW_GLOBAL_OFF_DIAGONAL
                       ? qsw::GlobalOperatorShape::OffDiagonal
                       : qsw::GlobalOperatorShape::Full;
  return w;
}

qsw::Method to_method(qsw_method m) {
  switch (m) {
    case QSW_METHOD_MATRIX_EXPONENTIAL: return qsw::Method::MatrixExponential;
    case QSW_METHOD_ADAPTIVE_RK: return qsw::Method::AdaptiveRK;
    default: return qsw::Method::Auto;
  }
}

qsw_method from_method(qsw::Method m) {
  switch (m) {
    case qsw::Method::MatrixExponential: return QSW_METHOD_MATRIX_EXPONENTIAL;
    case qsw::Method::AdaptiveRK: return QSW_METHOD_ADAPTIVE_RK;
    default: return QSW_METHOD_AUTO;
  }
}

void emit_graph(qsw::Graph g, qsw_graph** out) { *out = new qsw_graph{std::move(g)}; }

void line_distribution(const qsw::oracles::LineDistribution& d, double* probabilities,
                       double* tail_mass) {
  std::copy(d.probabilities.begin(), d.probabilities.end(), probabilities);
  if (tail_mass != nullptr) *tail_mass = d.tail_mass;
}

}  // namespace

extern "C" {

const char* qsw_version(void) { return qsw::kVersion; }

const char* qsw_status_name(qsw_status status) {
  switch (status) {
    case QSW_OK: return "OK";
    case QSW_ERR_NULL_ARGUMENT: return "NullArgument";
    case QSW_ERR_INTERNAL: return "Internal";
    default:
      if (status >= QSW_ERR_INVALID_ARGUMENT && status <= QSW_ERR_PARSE) {
        return qsw::to_string(static_cast<qsw::ErrorCode>(status));
      }
      return "Unknown";
  }
}

const char* qsw_last_error_message(void) { return g_last_error.c_str(); }

qsw_status qsw_graph_create(size_t n_vertices, const qsw_edge* edges, size_t n_edges,
                            qsw_graph** out) {
  QSW_REQUIRE(out);
  if (n_edges != 0) QSW_REQUIRE(edges);
  return guarded([&] {
    std::vector<qsw::Edge> list;
    list.reserve(n_edges);
    for (size_t i = 0; i < n_edges; ++i) list.push_back({edges[i].u, edges[i].v, edges[i].weight});
    emit_graph(qsw::Graph::from_edge_list(n_vertices, list), out);
  });
}

qsw_status qsw_graph_create_line(size_t n_sites, double gamma, qsw_graph** out) {
  QSW_REQUIRE(out);
  return guarded([&] { emit_graph(qsw::build_line(n_sites, gamma), out); });
}

qsw_status qsw_graph_parse_edge_list(const char* text, qsw_graph** out) {
  QSW_REQUIRE(text);
  QSW_REQUIRE(out);
  return guarded([&] { emit_graph(qsw::parse_edge_list(text), out); });
}

qsw_status qsw_graph_load_edge_list(const char* path, qsw_graph** out) {
  QSW_REQUIRE(path);
  QSW_REQUIRE(out);
  return guarded([&] { emit_graph(qsw::load_edge_list(path), out); });
}

void qsw_graph_destroy(qsw_graph* graph) { delete graph; }

size_t qsw_graph_vertex_count(const qsw_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.n_vertices();
}

size_t qsw_graph_edge_count(const qsw_graph* graph) {
  return graph == nullptr ? 0 : graph->graph.edges().size();
}

int qsw_graph_is_line(const qsw_graph* graph) {
  return graph != nullptr && graph->graph.line_map().has_value() ? 1 : 0;
}

qsw_status qsw_graph_line_index(const qsw_graph* graph, long position, size_t* index) {
  QSW_REQUIRE(graph);
  QSW_REQUIRE(index);
  const auto& map = graph->graph.line_map();
  if (!map) return fail(QSW_ERR_NON_LINE_GRAPH, "graph is not a line");
  return guarded([&] { *index = map->index_of(position); });
}

qsw_status qsw_graph_line_position(const qsw_graph* graph, size_t index, long* position) {
  QSW_REQUIRE(graph);
  QSW_REQUIRE(position);
  const auto& map = graph->graph.line_map();
  if (!map) return fail(QSW_ERR_NON_LINE_GRAPH, "graph is not a line");
  if (index >= map->n_sites) return fail(QSW_ERR_INDEX_OUT_OF_RANGE, "index out of range");
  *position = map->position_of(index);
  return QSW_OK;
}

qsw_status qsw_graph_generator(const qsw_graph* graph, double* out, size_t out_len) {
  QSW_REQUIRE(graph);
  QSW_REQUIRE(out);
  const size_t n = graph->graph.n_vertices();
  if (out_len < n * n) return fail(QSW_ERR_LENGTH_MISMATCH, "output buffer shorter than n*n");
  return guarded([&] {
    const qsw::GeneratorMatrix m = qsw::classical_generator(graph->graph);
    std::memcpy(out, m.entries().data(), n * n * sizeof(double));
  });
}

void qsw_walk_options_default(qsw_walk_options* options) {
  if (options == nullptr) return;
  options->amplitude = QSW_AMPLITUDE_SQRT;
  options->global_shape = QSW_GLOBAL_FULL;
}

qsw_status qsw_walk_create(const qsw_graph* graph, qsw_regime regime,
                           const qsw_walk_options* options, qsw_walk** out) {
  QSW_REQUIRE(graph);
  QSW_REQUIRE(out);
  qsw::WalkRegime r;
  switch (regime) {
    case QSW_REGIME_CRW: r = qsw::WalkRegime::Crw; break;
    case QSW_REGIME_QW: r = qsw::WalkRegime::Qw; break;
    case QSW_REGIME_QSW_GLOBAL: r = qsw::WalkRegime::QswGlobal; break;
    default:
      return fail(QSW_ERR_INVALID_ARGUMENT, "use qsw_walk_create_custom for custom operators");
  }
  return guarded([&] { *out = new qsw_walk{qsw::Walk(graph->graph, r, walk_options(options))}; });
}

qsw_status qsw_walk_create_custom(const qsw_graph* graph, const qsw_jump_entry* entries,
                                  size_t n_entries, size_t n_operators, qsw_walk** out) {
  QSW_REQUIRE(graph);
  QSW_REQUIRE(out);
  if (n_entries != 0) QSW_REQUIRE(entries);
  return guarded([&] {
    const auto n = static_cast<Eigen::Index>(graph->graph.n_vertices());
    std::vector<std::vector<Eigen::Triplet<qsw::Complex>>> triplets(n_operators);
    for (size_t i = 0; i < n_entries; ++i) {
      const qsw_jump_entry& e = entries[i];
      if (e.op >= n_operators || e.row >= static_cast<size_t>(n) ||
          e.col >= static_cast<size_t>(n)) {
        throw qsw::Error(qsw::ErrorCode::IndexOutOfRange,
                         "jump entry " + std::to_string(i) + " is out of range");
      }
      triplets[e.op].emplace_back(static_cast<Eigen::Index>(e.row),
                                  static_cast<Eigen::Index>(e.col), qsw::Complex{e.re, e.im});
    }
    std::vector<qsw::SparseComplex> ops;
    for (const auto& t : triplets) {
      qsw::SparseComplex op(n, n);
      op.setFromTriplets(t.begin(), t.end());
      ops.push_back(std::move(op));
    }
    *out = new qsw_walk{qsw::Walk(graph->graph, std::move(ops))};
  });
}

void qsw_walk_destroy(qsw_walk* walk) { delete walk; }

size_t qsw_walk_dim(const qsw_walk* walk) {
  return walk == nullptr ? 0 : walk->walk.graph().n_vertices();
}

size_t qsw_walk_operator_count(const qsw_walk* walk) {
  return walk == nullptr ? 0 : walk->walk.jump_operators().size();
}

void qsw_solver_options_default(qsw_solver_options* options) {
  if (options == nullptr) return;
  const qsw::PropagationConfig cfg;
  options->method = QSW_METHOD_AUTO;
  options->rel_tol = cfg.rel_tol;
  options->abs_tol = cfg.abs_tol;
  options->max_step = cfg.max_step;
  options->validate_every = cfg.validate_every;
}

qsw_status qsw_walk_evolve(const qsw_walk* walk, double omega, double t, size_t origin,
                           const qsw_solver_options* solver, double* populations,
                           size_t populations_len, qsw_evolution_stats* stats) {
  QSW_REQUIRE(walk);
  QSW_REQUIRE(populations);
  const size_t n = walk->walk.graph().n_vertices();
  if (populations_len < n) return fail(QSW_ERR_LENGTH_MISMATCH, "population buffer too short");
  return guarded([&] {
    qsw::PropagationConfig cfg;
    if (solver != nullptr) {
      cfg.method = to_method(solver->method);
      cfg.rel_tol = solver->rel_tol;
      cfg.abs_tol = solver->abs_tol;
      cfg.max_step = solver->max_step;
      cfg.validate_every = solver->validate_every;
    }
    const qsw::WalkOutcome r = qsw::run_walk(walk->walk, omega, t, origin, cfg);
    std::copy(r.populations.values.begin(), r.populations.values.end(), populations);
    if (stats != nullptr) {
      stats->coherence_l1 = r.coherence_l1;
      stats->trace_drift = r.diagnostics.trace_drift;
      stats->hermiticity = r.diagnostics.hermiticity;
      stats->min_eigenvalue = r.diagnostics.min_eigenvalue;
      stats->solver_steps = r.solver_steps;
      stats->populations_clamped = r.populations.clamped ? 1 : 0;
      stats->method = from_method(r.method);
    }
  });
}

qsw_status qsw_walk_audit(const qsw_walk* walk, double tol, int* passed, char** report_json) {
  QSW_REQUIRE(walk);
  QSW_REQUIRE(passed);
  QSW_REQUIRE(report_json);
  if (!(tol >= 0.0)) return fail(QSW_ERR_INVALID_ARGUMENT, "tolerance must be >= 0");
  return guarded([&] {
    const qsw::Walk& w = walk->walk;
    const qsw::AuditReport report =
        qsw::audit_axioms(w.audit_hamiltonian(), w.jump_operators(), w.graph(), tol);
    const std::string json = report.to_json();
    char* buf = new char[json.size() + 1];
    std::memcpy(buf, json.c_str(), json.size() + 1);
    *report_json = buf;
    *passed = report.passed ? 1 : 0;
  });
}

void qsw_string_free(char* str) { delete[] str; }

qsw_status qsw_oracle_crw_line(size_t n_sites, double gamma, double t, double* probabilities,
                               double* tail_mass) {
  QSW_REQUIRE(probabilities);
  return guarded([&] {
    line_distribution(qsw::oracles::crw_line_analytic({n_sites, gamma, t}), probabilities,
                      tail_mass);
  });
}

qsw_status qsw_oracle_qw_line(size_t n_sites, double gamma, double t, double* probabilities,
                              double* tail_mass) {
  QSW_REQUIRE(probabilities);
  return guarded([&] {
    line_distribution(qsw::oracles::qw_line_analytic({n_sites, gamma, t}), probabilities,
                      tail_mass);
  });
}

qsw_status qsw_total_variation(const double* p, const double* q, size_t n, double* out) {
  QSW_REQUIRE(p);
  QSW_REQUIRE(q);
  QSW_REQUIRE(out);
  return guarded([&] { *out = qsw::oracles::total_variation({p, p + n}, {q, q + n}); });
}

qsw_status qsw_variance(const double* p, const long* positions, size_t n, double* out) {
  QSW_REQUIRE(p);
  QSW_REQUIRE(positions);
  QSW_REQUIRE(out);
  return guarded([&] { *out = qsw::oracles::variance({p, p + n}, {positions, positions + n}); });
}

}  // extern "C"
