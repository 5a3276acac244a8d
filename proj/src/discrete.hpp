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

#include "common.hpp"
#include "evolution.hpp"
#include "graph.hpp"

namespace qsw::discrete {

/// Column-stochastic matrix: p'(a) = sum_b S(a, b) p(b).
class StochasticMatrix {
 public:
  /// Throws InvalidArgument unless entries are >= 0 and columns sum to 1
  /// within 1e-12.
  explicit StochasticMatrix(RealMatrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const RealMatrix& entries() const { return entries_; }

 private:
  RealMatrix entries_;
};

/// Operators C_k of the map rho -> sum_k C_k rho C_k^dagger.
class KrausSet {
 public:
  /// Throws InvalidArgument when sum_k C_k^dagger C_k deviates from I by
  /// more than 1e-10.
  KrausSet(std::size_t dim, std::vector<SparseComplex> operators);

  std::size_t dim() const { return dim_; }
  const std::vector<SparseComplex>& operators() const { return operators_; }
  /// max |sum_k C_k^dagger C_k - I|
  double completeness_defect() const { return completeness_defect_; }

 private:
  std::size_t dim_;
  std::vector<SparseComplex> operators_;
  double completeness_defect_ = 0.0;
};

/// Lazy walk: stay with probability hold, otherwise hop to a uniformly chosen
/// neighbour. Throws IsolatedVertexWithoutHold.
StochasticMatrix lazy_walk_matrix(const Graph& g, double hold);

/// C_(a,b) = sqrt(S(a, b)) |a><b| for every S(a, b) > 0.
KrausSet kraus_from_stochastic(const StochasticMatrix& s);

DensityMatrix apply_map(const KrausSet& ks, const DensityMatrix& rho);

/// B(a, alpha, b, beta) = sum_k <a|C_k|b> <beta|C_k^dagger|alpha>
Complex map_tensor_element(const KrausSet& ks, std::size_t a, std::size_t alpha, std::size_t b,
                           std::size_t beta);

DensityMatrix iterate_map(const KrausSet& ks, const DensityMatrix& rho0, std::size_t steps);

}  // namespace qsw::discrete
