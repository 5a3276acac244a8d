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

#include "discrete.hpp"

#include <cmath>

namespace qsw::discrete {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

StochasticMatrix::StochasticMatrix(RealMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "stochastic matrix must be square and non-empty");
  }
  if (entries_.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "stochastic matrix has a negative entry");
  }
  const double dev = (entries_.colwise().sum().array() - 1.0).abs().maxCoeff();
  if (dev > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "stochastic matrix columns do not sum to 1");
  }
}

KrausSet::KrausSet(std::size_t dim, std::vector<SparseComplex> operators)
    : dim_(dim), operators_(std::move(operators)) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "Kraus dimension must be >= 1");
  ComplexMatrix sum = ComplexMatrix::Zero(idx(dim_), idx(dim_));
  for (auto& c : operators_) {
    if (c.rows() != idx(dim_) || c.cols() != idx(dim_)) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator has wrong dimension");
    }
    c.makeCompressed();
    sum += ComplexMatrix(c.adjoint() * c);
  }
  completeness_defect_ =
      (sum - ComplexMatrix::Identity(idx(dim_), idx(dim_))).cwiseAbs().maxCoeff();
  if (completeness_defect_ > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "Kraus operators are not complete");
  }
}

StochasticMatrix lazy_walk_matrix(const Graph& g, double hold) {
  if (!(hold >= 0.0 && hold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "hold probability must lie in [0, 1]");
  }
  const std::size_t n = g.n_vertices();
  RealMatrix s = RealMatrix::Zero(idx(n), idx(n));
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t deg = g.degree(b);
    if (deg == 0) {
      if (hold != 1.0) {
        throw Error(ErrorCode::IsolatedVertexWithoutHold,
                    "vertex " + std::to_string(b) + " has no neighbours and hold < 1");
      }
      s(idx(b), idx(b)) = 1.0;
      continue;
    }
    s(idx(b), idx(b)) = hold;
    for (std::size_t a : g.neighbors(b)) {
      s(idx(a), idx(b)) = (1.0 - hold) / static_cast<double>(deg);
    }
  }
  return StochasticMatrix(std::move(s));
}

KrausSet kraus_from_stochastic(const StochasticMatrix& s) {
  const std::size_t n = s.dim();
  std::vector<SparseComplex> ops;
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      const double p = s.entries()(idx(a), idx(b));
      if (p <= 0.0) continue;
      SparseComplex c(idx(n), idx(n));
      c.insert(idx(a), idx(b)) = std::sqrt(p);
      ops.push_back(std::move(c));
    }
  }
  return KrausSet(n, std::move(ops));
}

DensityMatrix apply_map(const KrausSet& ks, const DensityMatrix& rho) {
  if (rho.dim() != ks.dim()) throw Error(ErrorCode::DimensionMismatch, "state and map differ");
  ComplexMatrix out = ComplexMatrix::Zero(idx(ks.dim()), idx(ks.dim()));
  for (const SparseComplex& c : ks.operators()) {
    const ComplexMatrix c_rho = c * rho.entries();
    out += c_rho * c.adjoint();
  }
  return DensityMatrix(std::move(out));
}

Complex map_tensor_element(const KrausSet& ks, std::size_t a, std::size_t alpha, std::size_t b,
                           std::size_t beta) {
  for (std::size_t i : {a, alpha, b, beta}) {
    if (i >= ks.dim()) throw Error(ErrorCode::IndexOutOfRange, "map tensor index out of range");
  }
  Complex sum{0.0, 0.0};
  for (const SparseComplex& c : ks.operators()) {
    sum += c.coeff(idx(a), idx(b)) * std::conj(c.coeff(idx(alpha), idx(beta)));
  }
  return sum;
}

DensityMatrix iterate_map(const KrausSet& ks, const DensityMatrix& rho0, std::size_t steps) {
  DensityMatrix rho = rho0;
  for (std::size_t i = 0; i < steps; ++i) rho = apply_map(ks, rho);
  return rho;
}

}  // namespace qsw::discrete
