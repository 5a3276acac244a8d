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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "common.hpp"
#include "graph.hpp"

namespace qsw {

/// Hermitian walk Hamiltonian, hbar = 1.
class Hamiltonian {
 public:
  /// Throws NonHermitianSource when the matrix is not Hermitian to 1e-14.
  explicit Hamiltonian(ComplexMatrix entries);
  static Hamiltonian zero(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(std::size_t a, std::size_t b) const {
    return entries_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }

 private:
  ComplexMatrix entries_;
};

/// H(a, b) = M(a, b). Throws NonHermitianSource when M is asymmetric by more
/// than 1e-12.
Hamiltonian hamiltonian_from_generator(const GeneratorMatrix& m);

enum class Regime { EdgeLocal, Global, Empty, Custom };

const char* to_string(Regime regime) noexcept;

/// How a hopping rate becomes a jump-operator amplitude. Sqrt makes the
/// population transfer rate equal the rate itself for any weight; Literal
/// uses the rate as the amplitude, which only agrees for unit rates.
enum class AmplitudeConvention { Sqrt, Literal };

/// Whether the single global operator copies M's diagonal.
enum class GlobalOperatorShape { Full, OffDiagonal };

class JumpOperatorSet {
 public:
  /// Throws DimensionMismatch when an operator is not dim x dim.
  JumpOperatorSet(std::size_t dim, std::vector<SparseComplex> operators,
                  Regime regime);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return operators_.size(); }
  bool empty() const { return operators_.empty(); }
  Regime regime() const { return regime_; }
  const std::vector<SparseComplex>& operators() const { return operators_; }
  const SparseComplex& operator[](std::size_t k) const { return operators_.at(k); }

  /// sum_k L_k^dagger L_k, cached at construction.
  const SparseComplex& decay() const { return decay_; }

 private:
  std::size_t dim_;
  std::vector<SparseComplex> operators_;
  Regime regime_;
  SparseComplex decay_;
};

/// One operator sqrt(M(a, b)) |a><b| (or M(a, b) |a><b| with the literal
/// convention) per ordered pair a != b with M(a, b) != 0.
JumpOperatorSet edge_jump_operators(
    const GeneratorMatrix& m,
    AmplitudeConvention convention = AmplitudeConvention::Sqrt);

/// A single operator equal to M.
JumpOperatorSet global_jump_operator(
    const GeneratorMatrix& m, GlobalOperatorShape shape = GlobalOperatorShape::Full);

JumpOperatorSet empty_jump_operators(std::size_t dim);

/// Index tuple of a generator tensor element: the coefficient multiplying
/// rho(b, beta) in d rho(a, alpha)/dt.
struct TensorIndex {
  std::size_t a = 0;
  std::size_t alpha = 0;
  std::size_t b = 0;
  std::size_t beta = 0;

  friend bool operator==(const TensorIndex&, const TensorIndex&) = default;
};

struct TensorElement {
  TensorIndex index;
  Complex value;
};

/// Kossakowski-Lindblad tensor element
///
///   delta(alpha, beta) <a| -iH - 1/2 K |b>
/// + delta(a, b)        <beta| iH - 1/2 K |alpha>
/// + sum_k <a|L_k|b> <beta|L_k^dagger|alpha>,        K = sum_k L_k^dagger L_k.
///
/// The Hamiltonian enters once, independent of the number of operators.
TensorElement tensor_element(const Hamiltonian& h, const JumpOperatorSet& ls,
                             const TensorIndex& idx);

/// Evaluates row `axiom` (1..6) of the connectivity-axiom table for the
/// process centred on vertex m. Axioms 1 uses only m; 2-4 use m, n (m != n);
/// 5 and 6 use l, m, n pairwise distinct. The returned index says which
/// tensor element the formula describes.
TensorElement axiom_rate(const Hamiltonian& h, const JumpOperatorSet& ls, int axiom,
                         std::size_t m, std::size_t n = 0, std::size_t l = 0);

struct AxiomCheck {
  int axiom = 0;
  std::size_t m = 0, n = 0, l = 0;
  bool conjugate = false;
  TensorIndex index;
  Complex formula;
  Complex tensor;
  double deviation = 0.0;
};

struct AuditReport {
  std::size_t dim = 0;
  Regime regime = Regime::Empty;
  double tolerance = 0.0;
  std::size_t elements_scanned = 0;
  std::size_t axiom_checks = 0;
  double max_axiom_deviation = 0.0;
  std::vector<AxiomCheck> axiom_failures;
  // Tensor elements whose ket hop (b -> a) or bra hop (beta -> alpha) joins
  // two distinct vertices that share no edge, yet are nonzero.
  std::size_t nonlocal_nonzero = 0;
  std::vector<TensorElement> nonlocal_examples;
  // Population-to-population rates between distinct non-adjacent vertices.
  std::size_t population_rate_violations = 0;
  std::array<std::size_t, 7> nonzero_by_axiom{};  // index 1..6
  std::vector<TensorElement> axiom6_nonzero;
  double max_trace_defect = 0.0;
  bool passed = false;

  std::string to_json() const;
};

/// Checks every axiom formula reachable from each vertex neighbourhood (and
/// its conjugate element) against tensor_element, and scans all dim^4 tensor
/// elements for nonzero couplings between non-adjacent vertices.
AuditReport audit_axioms(const Hamiltonian& h, const JumpOperatorSet& ls,
                         const Graph& g, double tol);

}  // namespace qsw
