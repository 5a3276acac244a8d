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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qsw {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using SparseComplex = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

inline constexpr Complex kI{0.0, 1.0};

enum class ErrorCode {
  InvalidArgument = 1,
  IndexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  NonpositiveWeight,
  NonHermitianSource,
  DimensionMismatch,
  OmegaOutOfRange,
  IndicesNotDistinct,
  IsolatedVertexWithoutHold,
  ToleranceNotMet,
  StateInvariantViolated,
  LengthMismatch,
  NonLineGraph,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto qsw_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qsw
