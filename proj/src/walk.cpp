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

#include "walk.hpp"

namespace qsw {

namespace {

JumpOperatorSet operators_for(WalkRegime regime, const GeneratorMatrix& m,
                              const WalkOptions& options) {
  switch (regime) {
    case WalkRegime::Crw: return edge_jump_operators(m, options.amplitude);
    case WalkRegime::Qw: return empty_jump_operators(m.dim());
    case WalkRegime::QswGlobal: return global_jump_operator(m, options.global_shape);
    case WalkRegime::QswCustom: break;
  }
  throw Error(ErrorCode::InvalidArgument, "custom regime needs explicit jump operators");
}

}  // namespace

Walk::Walk(Graph graph, WalkRegime regime, const WalkOptions& options)
    : graph_(std::move(graph)),
      regime_(regime),
      generator_(classical_generator(graph_)),
      hamiltonian_(hamiltonian_from_generator(generator_)),
      jump_operators_(operators_for(regime, generator_, options)) {}

Walk::Walk(Graph graph, std::vector<SparseComplex> custom_operators)
    : graph_(std::move(graph)),
      regime_(WalkRegime::QswCustom),
      generator_(classical_generator(graph_)),
      hamiltonian_(hamiltonian_from_generator(generator_)),
      jump_operators_(graph_.n_vertices(), std::move(custom_operators), Regime::Custom) {}

Hamiltonian Walk::audit_hamiltonian() const {
  if (regime_ == WalkRegime::Crw) return Hamiltonian::zero(graph_.n_vertices());
  return hamiltonian_;
}

WalkOutcome run_walk(const Walk& walk, double omega, double t, std::size_t origin,
                     const PropagationConfig& cfg) {
  const Liouvillian l = walk.liouvillian(omega);
  const DensityMatrix rho0 = DensityMatrix::basis_state(walk.graph().n_vertices(), origin);
  PropagationResult r = propagate(rho0, l, t, cfg);
  WalkOutcome out;
  out.populations = populations(r.state);
  out.coherence_l1 = coherence_l1(r.state);
  out.diagnostics = r.state.diagnostics();
  out.solver_steps = r.steps;
  out.method = r.method;
  return out;
}

}  // namespace qsw
