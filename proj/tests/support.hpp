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

// Shared fixtures: seeded random graphs and states, plus reference code that
// deliberately avoids the library's own routines.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "evolution.hpp"
#include "graph.hpp"
#include "operators.hpp"

namespace qsw_test {

using qsw::Complex;
using qsw::ComplexMatrix;

/// Connected graph: a random spanning tree plus extra edges.
inline qsw::Graph random_connected_graph(std::mt19937_64& rng, std::size_t n,
                                         double extra_edge_probability = 0.3) {
  std::uniform_real_distribution<double> weight(0.2, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  std::vector<qsw::Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    const std::size_t u = parent(rng);
    used[u][v] = used[v][u] = true;
    edges.push_back({u, v, weight(rng)});
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!used[u][v] && coin(rng) < extra_edge_probability) edges.push_back({u, v, weight(rng)});
    }
  }
  return qsw::Graph::from_edge_list(n, edges);
}

/// Mixed state sum_k p_k |psi_k><psi_k| with random complex psi_k.
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

/// Any complex matrix (not a state); for linearity checks.
inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return a;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Lindblad right-hand side written out term by term on dense matrices.
inline ComplexMatrix reference_rhs(const ComplexMatrix& h, const std::vector<ComplexMatrix>& ls,
                                   double omega, const ComplexMatrix& rho) {
  const Complex i(0.0, 1.0);
  ComplexMatrix out = -(1.0 - omega) * i * (h * rho - rho * h);
  for (const ComplexMatrix& l : ls) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += omega * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

inline std::vector<ComplexMatrix> dense_operators(const qsw::JumpOperatorSet& ls) {
  std::vector<ComplexMatrix> out;
  for (const auto& l : ls.operators()) out.emplace_back(ComplexMatrix(l));
  return out;
}

/// Modified Bessel I_n(x) e^{-x} from its power series, in long double.
inline double series_scaled_bessel_i(int n, double x) {
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= static_cast<long double>(x) / (2.0L * k);
  long double sum = 0.0L;
  const long double q = static_cast<long double>(x) * x / 4.0L;
  for (int k = 0; k < 400; ++k) {
    sum += term;
    term *= q / ((k + 1.0L) * (k + 1.0L + n));
  }
  return static_cast<double>(sum * std::exp(-static_cast<long double>(x)));
}

}  // namespace qsw_test
