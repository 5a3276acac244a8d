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
#include <variant>
#include <vector>

#include "common.hpp"
#include "operators.hpp"

namespace qsw {

struct StateTolerance {
  double hermiticity = 1e-12;
  double trace = 1e-12;
  double min_eigenvalue = -1e-9;
};

/// Tolerances applied to propagated states.
inline constexpr StateTolerance kPropagatedStateTolerance{1e-10, 1e-9, -1e-9};

struct StateDiagnostics {
  double trace_drift = 0.0;   // |Tr rho - 1|
  double hermiticity = 0.0;   // max |rho - rho^dagger|
  double min_eigenvalue = 0.0;
};

/// Computes all three diagnostics; the eigenvalue is taken from the
/// Hermitian part.
StateDiagnostics diagnose(const ComplexMatrix& rho);

/// Walker state: Hermitian, unit trace, positive semidefinite within the
/// tolerances given at construction.
class DensityMatrix {
 public:
  /// Throws StateInvariantViolated with the offending diagnostics.
  explicit DensityMatrix(ComplexMatrix entries, const StateTolerance& tol = {});

  /// |vertex><vertex|
  static DensityMatrix basis_state(std::size_t dim, std::size_t vertex);
  /// |psi><psi| for a normalised psi.
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix diagonal(const std::vector<double>& probabilities);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  const StateDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  ComplexMatrix entries_;
  StateDiagnostics diagnostics_;
};

/// d rho/dt = -(1 - omega) i [H, rho]
///            + omega sum_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho}).
/// Throws OmegaOutOfRange or DimensionMismatch.
ComplexMatrix lindblad_rhs(const Hamiltonian& h, const JumpOperatorSet& ls, double omega,
                           const ComplexMatrix& rho);
ComplexMatrix lindblad_rhs(const Hamiltonian& h, const JumpOperatorSet& ls, double omega,
                           const DensityMatrix& rho);

/// Column-stacking vectorisation: vec(rho)[a + dim * alpha] = rho(a, alpha).
/// The generator tensor element (a, alpha, b, beta) is therefore the matrix
/// entry at row a + dim * alpha, column b + dim * beta.
ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim);

/// Superoperator of lindblad_rhs on vectorised states. Stored sparse when
/// dim >= kSparseThreshold, dense otherwise.
class Liouvillian {
 public:
  static constexpr std::size_t kSparseThreshold = 32;

  Liouvillian(Hamiltonian h, JumpOperatorSet ls, double omega);

  std::size_t dim() const { return h_.dim(); }
  double omega() const { return omega_; }
  bool is_sparse() const { return std::holds_alternative<SparseComplex>(matrix_); }
  const Hamiltonian& hamiltonian() const { return h_; }
  const JumpOperatorSet& jump_operators() const { return ls_; }

  ComplexVector apply(const ComplexVector& v) const;
  ComplexMatrix dense() const;
  SparseComplex sparse() const;
  /// Induced 1-norm (max column absolute sum).
  double norm1() const;

 private:
  Hamiltonian h_;
  JumpOperatorSet ls_;
  double omega_;
  std::variant<ComplexMatrix, SparseComplex> matrix_;
};

Liouvillian build_liouvillian(const Hamiltonian& h, const JumpOperatorSet& ls, double omega);

enum class Method { Auto, MatrixExponential, AdaptiveRK };

const char* to_string(Method method) noexcept;

struct PropagationConfig {
  /// Auto picks MatrixExponential for dim <= kExpmMaxDim, AdaptiveRK above.
  Method method = Method::Auto;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// Upper bound on an adaptive step; 0 disables the bound.
  double max_step = 0.0;
  /// Trace and Hermiticity are checked every this many solver steps.
  std::size_t validate_every = 64;
  StateTolerance state_tolerance = kPropagatedStateTolerance;

  static constexpr std::size_t kExpmMaxDim = 64;
  /// Dense Pade scaling-and-squaring is used up to this dim; the action of
  /// the exponential on a vector is computed by a scaled Taylor series above.
  static constexpr std::size_t kDenseExpmMaxDim = 16;
};

struct PropagationResult {
  DensityMatrix state;
  Method method = Method::Auto;
  std::size_t steps = 0;
};

/// rho(t) = exp(L t)[rho0]. Throws ToleranceNotMet when a solver cannot
/// reach its tolerance and StateInvariantViolated when the result leaves the
/// state tolerances. States are never renormalised.
PropagationResult propagate(const DensityMatrix& rho0, const Liouvillian& liouvillian, double t,
                            const PropagationConfig& cfg = {});

struct Populations {
  std::vector<double> values;
  bool clamped = false;  // some entry in [-1e-9, 0) was set to 0
};

Populations populations(const DensityMatrix& rho);

/// sum over a != alpha of |rho(a, alpha)|
double coherence_l1(const DensityMatrix& rho);

}  // namespace qsw
