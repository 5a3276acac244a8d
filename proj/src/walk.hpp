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
#include <vector>

#include "evolution.hpp"
#include "graph.hpp"
#include "operators.hpp"

namespace qsw {

enum class WalkRegime { Crw, Qw, QswGlobal, QswCustom };

struct WalkOptions {
  AmplitudeConvention amplitude = AmplitudeConvention::Sqrt;
  GlobalOperatorShape global_shape = GlobalOperatorShape::Full;
};

/// A graph together with the generator pieces of one regime. The coherent
/// part is always H = M; regimes differ in their jump operators:
///   crw         one operator per directed edge
///   qw          none
///   qsw-global  the single operator L = M
///   qsw-custom  caller supplied
class Walk {
 public:
  Walk(Graph graph, WalkRegime regime, const WalkOptions& options = {});
  Walk(Graph graph, std::vector<SparseComplex> custom_operators);

  const Graph& graph() const { return graph_; }
  WalkRegime regime() const { return regime_; }
  const GeneratorMatrix& generator() const { return generator_; }
  const Hamiltonian& hamiltonian() const { return hamiltonian_; }
  const JumpOperatorSet& jump_operators() const { return jump_operators_; }

  /// The pure classical walk carries no Hamiltonian, so the crw audit runs
  /// against H = 0; other regimes use H = M.
  Hamiltonian audit_hamiltonian() const;

  Liouvillian liouvillian(double omega) const {
    return build_liouvillian(hamiltonian_, jump_operators_, omega);
  }

 private:
  Graph graph_;
  WalkRegime regime_;
  GeneratorMatrix generator_;
  Hamiltonian hamiltonian_;
  JumpOperatorSet jump_operators_;
};

struct WalkOutcome {
  Populations populations;
  double coherence_l1 = 0.0;
  StateDiagnostics diagnostics;
  std::size_t solver_steps = 0;
  Method method = Method::Auto;
};

/// Propagates |origin><origin| for time t under L_omega.
WalkOutcome run_walk(const Walk& walk, double omega, double t, std::size_t origin,
                     const PropagationConfig& cfg = {});

}  // namespace qsw
