/*
 * Copyright 2026 The qsw Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the quantum stochastic walk library.
 *
 * Objects are opaque handles created by qsw_*_create* functions and released
 * with the matching qsw_*_destroy. Every fallible call returns a qsw_status;
 * on failure a human-readable message for the calling thread is available
 * from qsw_last_error_message() until the next failing call on that thread.
 * Handles are immutable after creation and may be shared between threads.
 */

#ifndef QSW_QSW_H
#define QSW_QSW_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(QSW_BUILDING_LIBRARY)
#define QSW_API __declspec(dllexport)
#else
#define QSW_API __declspec(dllimport)
#endif
#else
#define QSW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsw_status {
  QSW_OK = 0,
  QSW_ERR_INVALID_ARGUMENT = 1,
  QSW_ERR_INDEX_OUT_OF_RANGE = 2,
  QSW_ERR_SELF_LOOP = 3,
  QSW_ERR_DUPLICATE_EDGE = 4,
  QSW_ERR_NONPOSITIVE_WEIGHT = 5,
  QSW_ERR_NON_HERMITIAN_SOURCE = 6,
  QSW_ERR_DIMENSION_MISMATCH = 7,
  QSW_ERR_OMEGA_OUT_OF_RANGE = 8,
  QSW_ERR_INDICES_NOT_DISTINCT = 9,
  QSW_ERR_ISOLATED_VERTEX_WITHOUT_HOLD = 10,
  QSW_ERR_TOLERANCE_NOT_MET = 11,
  QSW_ERR_STATE_INVARIANT_VIOLATED = 12,
  QSW_ERR_LENGTH_MISMATCH = 13,
  QSW_ERR_NON_LINE_GRAPH = 14,
  QSW_ERR_PARSE = 15,
  QSW_ERR_NULL_ARGUMENT = 100,
  QSW_ERR_INTERNAL = 101
} qsw_status;

typedef enum qsw_regime {
  QSW_REGIME_CRW = 0,        /* one jump operator per directed edge */
  QSW_REGIME_QW = 1,         /* no jump operators */
  QSW_REGIME_QSW_GLOBAL = 2, /* the single operator L = M */
  QSW_REGIME_QSW_CUSTOM = 3  /* caller-supplied operators */
} qsw_regime;

typedef enum qsw_amplitude_convention {
  QSW_AMPLITUDE_SQRT = 0,   /* amplitude sqrt(rate): transfer rate = rate */
  QSW_AMPLITUDE_LITERAL = 1 /* amplitude = rate: transfer rate = rate^2 */
} qsw_amplitude_convention;

typedef enum qsw_global_shape {
  QSW_GLOBAL_FULL = 0,       /* L = M including its diagonal */
  QSW_GLOBAL_OFF_DIAGONAL = 1
} qsw_global_shape;

typedef enum qsw_method {
  QSW_METHOD_AUTO = 0,
  QSW_METHOD_MATRIX_EXPONENTIAL = 1,
  QSW_METHOD_ADAPTIVE_RK = 2
} qsw_method;

typedef struct qsw_graph qsw_graph;
typedef struct qsw_walk qsw_walk;

typedef struct qsw_edge {
  size_t u;
  size_t v;
  double weight;
} qsw_edge;

/* One nonzero entry of jump operator number `op` (0-based). */
typedef struct qsw_jump_entry {
  size_t op;
  size_t row;
  size_t col;
  double re;
  double im;
} qsw_jump_entry;

typedef struct qsw_walk_options {
  qsw_amplitude_convention amplitude;
  qsw_global_shape global_shape;
} qsw_walk_options;

typedef struct qsw_solver_options {
  qsw_method method;
  double rel_tol;
  double abs_tol;
  double max_step;       /* 0: unbounded */
  size_t validate_every; /* 0: only validate the final state */
} qsw_solver_options;

typedef struct qsw_evolution_stats {
  double coherence_l1;
  double trace_drift;
  double hermiticity;
  double min_eigenvalue;
  size_t solver_steps;
  int populations_clamped;
  qsw_method method;
} qsw_evolution_stats;

QSW_API const char* qsw_version(void);
QSW_API const char* qsw_status_name(qsw_status status);
QSW_API const char* qsw_last_error_message(void);

/* Graphs */

QSW_API qsw_status qsw_graph_create(size_t n_vertices, const qsw_edge* edges, size_t n_edges,
                                    qsw_graph** out);
/* Odd n_sites >= 3; vertex (n_sites - 1) / 2 is position 0. */
QSW_API qsw_status qsw_graph_create_line(size_t n_sites, double gamma, qsw_graph** out);
/* Edge-list text: "vertices N" header, then "u v [weight]" lines, '#' comments. */
QSW_API qsw_status qsw_graph_parse_edge_list(const char* text, qsw_graph** out);
QSW_API qsw_status qsw_graph_load_edge_list(const char* path, qsw_graph** out);
QSW_API void qsw_graph_destroy(qsw_graph* graph);

QSW_API size_t qsw_graph_vertex_count(const qsw_graph* graph);
QSW_API size_t qsw_graph_edge_count(const qsw_graph* graph);
QSW_API int qsw_graph_is_line(const qsw_graph* graph);
/* Signed line position <-> storage index. QSW_ERR_NON_LINE_GRAPH otherwise. */
QSW_API qsw_status qsw_graph_line_index(const qsw_graph* graph, long position, size_t* index);
QSW_API qsw_status qsw_graph_line_position(const qsw_graph* graph, size_t index, long* position);
/* Classical generator M, n*n entries written column-major. */
QSW_API qsw_status qsw_graph_generator(const qsw_graph* graph, double* out, size_t out_len);

/* Walks */

QSW_API void qsw_walk_options_default(qsw_walk_options* options);
/* options may be NULL for the defaults. QSW_REGIME_QSW_CUSTOM is rejected
 * here; use qsw_walk_create_custom. */
QSW_API qsw_status qsw_walk_create(const qsw_graph* graph, qsw_regime regime,
                                   const qsw_walk_options* options, qsw_walk** out);
QSW_API qsw_status qsw_walk_create_custom(const qsw_graph* graph, const qsw_jump_entry* entries,
                                          size_t n_entries, size_t n_operators, qsw_walk** out);
QSW_API void qsw_walk_destroy(qsw_walk* walk);
QSW_API size_t qsw_walk_dim(const qsw_walk* walk);
QSW_API size_t qsw_walk_operator_count(const qsw_walk* walk);

QSW_API void qsw_solver_options_default(qsw_solver_options* options);

/* Starts from |origin><origin| (origin is a storage index), propagates to
 * time t under the omega-weighted generator and writes the dim populations.
 * solver and stats may be NULL. */
QSW_API qsw_status qsw_walk_evolve(const qsw_walk* walk, double omega, double t, size_t origin,
                                   const qsw_solver_options* solver, double* populations,
                                   size_t populations_len, qsw_evolution_stats* stats);

/* Compares every connectivity-axiom formula with the generator tensor and
 * scans all tensor elements for couplings between non-adjacent vertices.
 * *report_json is allocated by the library; release it with qsw_string_free.
 * Returns QSW_OK whenever the audit ran; *passed carries the verdict. */
QSW_API qsw_status qsw_walk_audit(const qsw_walk* walk, double tol, int* passed,
                                  char** report_json);
QSW_API void qsw_string_free(char* str);

/* Reference distributions */

/* Infinite-line closed forms over positions -(n-1)/2 .. (n-1)/2 (n_sites
 * values); tail_mass (may be NULL) receives the probability outside. */
QSW_API qsw_status qsw_oracle_crw_line(size_t n_sites, double gamma, double t,
                                       double* probabilities, double* tail_mass);
QSW_API qsw_status qsw_oracle_qw_line(size_t n_sites, double gamma, double t,
                                      double* probabilities, double* tail_mass);
QSW_API qsw_status qsw_total_variation(const double* p, const double* q, size_t n, double* out);
QSW_API qsw_status qsw_variance(const double* p, const long* positions, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* QSW_QSW_H */
