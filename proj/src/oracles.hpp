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

// Reference solutions that share no code with the propagation path: Bessel
// closed forms for the infinite line and eigendecomposition-based solvers
// for the classical and Schroedinger equations.

#pragma once

#include <cstddef>
#include <vector>

#include "common.hpp"
#include "graph.hpp"
#include "operators.hpp"

namespace qsw::oracles {

/// J_0(x) .. J_max_order(x), Miller downward recurrence normalised by
/// J_0 + 2 sum J_2k = 1. Requires x >= 0.
std::vector<double> bessel_j_sequence(std::size_t max_order, double x);

/// exp(-x) I_0(x) .. exp(-x) I_max_order(x), downward recurrence normalised
/// by I_0 + 2 sum I_k = exp(x). Requires x >= 0.
std::vector<double> scaled_bessel_i_sequence(std::size_t max_order, double x);

struct LineWalkSpec {
  std::size_t n_sites = 61;
  double gamma = 1.0;
  double t = 5.0;

  /// Throws like build_line plus InvalidArgument for t < 0.
  void validate() const;
};

/// Distribution over the signed positions -(n-1)/2 .. (n-1)/2. Nothing is
/// renormalised; tail_mass is the probability beyond the window.
struct LineDistribution {
  std::vector<long> positions;
  std::vector<double> probabilities;
  double tail_mass = 0.0;
};

/// p_j = exp(-2 gamma t) I_|j|(2 gamma t), exact on the infinite line.
LineDistribution crw_line_analytic(const LineWalkSpec& spec);

/// p_j = J_j(2 gamma t)^2, exact on the infinite line.
LineDistribution qw_line_analytic(const LineWalkSpec& spec);

/// exp(M t) p0 through an eigendecomposition of M.
std::vector<double> classical_master_solve(const GeneratorMatrix& m, const std::vector<double>& p0,
                                           double t);

/// exp(-i H t) psi0 through an eigendecomposition of H.
ComplexVector schrodinger_solve(const Hamiltonian& h, const ComplexVector& psi0, double t);

/// 1/2 sum |p_i - q_i|; throws LengthMismatch.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Second central moment of p over the given positions.
double variance(const std::vector<double>& p, const std::vector<long>& positions);

}  // namespace qsw::oracles
