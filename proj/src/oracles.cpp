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

#include "oracles.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qsw::oracles {

namespace {

constexpr double kRescaleAbove = 1e250;

// Starting order for the downward recurrence; far enough past both the
// requested order and x that the truncation error is below double precision.
std::size_t start_order(std::size_t max_order, double x) {
  std::size_t n = max_order + static_cast<std::size_t>(std::ceil(x)) + 60;
  return n + (n % 2);
}

void check_argument(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidArgument, "Bessel argument must be finite and >= 0");
  }
}

}  // namespace

std::vector<double> bessel_j_sequence(std::size_t max_order, double x) {
  check_argument(x);
  std::vector<double> out(max_order + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const std::size_t top = start_order(max_order, x);
  std::vector<double> j(top + 2, 0.0);
  j[top + 1] = 0.0;
  j[top] = 1e-300;
  for (std::size_t k = top; k >= 1; --k) {
    j[k - 1] = (2.0 * static_cast<double>(k) / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > kRescaleAbove) {
      for (std::size_t i = k - 1; i <= top; ++i) j[i] /= kRescaleAbove;
    }
  }
  double norm = j[0];
  for (std::size_t k = 2; k <= top; k += 2) norm += 2.0 * j[k];
  for (std::size_t k = 0; k <= max_order; ++k) out[k] = j[k] / norm;
  return out;
}

std::vector<double> scaled_bessel_i_sequence(std::size_t max_order, double x) {
  check_argument(x);
  std::vector<double> out(max_order + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const std::size_t top = start_order(max_order, x);
  std::vector<double> v(top + 2, 0.0);
  v[top] = 1e-300;
  for (std::size_t k = top; k >= 1; --k) {
    v[k - 1] = (2.0 * static_cast<double>(k) / x) * v[k] + v[k + 1];
    if (v[k - 1] > kRescaleAbove) {
      for (std::size_t i = k - 1; i <= top; ++i) v[i] /= kRescaleAbove;
    }
  }
  // exp(x) = I_0 + 2 sum_{k>=1} I_k, so dividing by that sum gives exp(-x) I_k.
  double norm = v[0];
  for (std::size_t k = 1; k <= top; ++k) norm += 2.0 * v[k];
  for (std::size_t k = 0; k <= max_order; ++k) out[k] = v[k] / norm;
  return out;
}

void LineWalkSpec::validate() const {
  (void)build_line(n_sites, gamma);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "walk time must be finite and >= 0");
  }
}

namespace {

LineDistribution symmetric_line(const LineWalkSpec& spec, const std::vector<double>& by_order) {
  const auto half = static_cast<long>(spec.n_sites / 2);
  LineDistribution d;
  for (long j = -half; j <= half; ++j) {
    d.positions.push_back(j);
    d.probabilities.push_back(by_order[static_cast<std::size_t>(std::labs(j))]);
  }
  const double inside = std::accumulate(d.probabilities.begin(), d.probabilities.end(), 0.0);
  d.tail_mass = std::max(0.0, 1.0 - inside);
  return d;
}

}  // namespace

LineDistribution crw_line_analytic(const LineWalkSpec& spec) {
  spec.validate();
  return symmetric_line(spec, scaled_bessel_i_sequence(spec.n_sites / 2, 2.0 * spec.gamma * spec.t));
}

LineDistribution qw_line_analytic(const LineWalkSpec& spec) {
  spec.validate();
  std::vector<double> amp = bessel_j_sequence(spec.n_sites / 2, 2.0 * spec.gamma * spec.t);
  for (double& a : amp) a *= a;
  return symmetric_line(spec, amp);
}

std::vector<double> classical_master_solve(const GeneratorMatrix& m, const std::vector<double>& p0,
                                           double t) {
  const std::size_t n = m.dim();
  if (p0.size() != n) throw Error(ErrorCode::DimensionMismatch, "p0 length differs from generator");
  const double total = std::accumulate(p0.begin(), p0.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "p0 must sum to 1");
  }
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "time must be >= 0");

  const RealVector p = Eigen::Map<const RealVector>(p0.data(), static_cast<Eigen::Index>(n));
  RealVector out;
  const RealMatrix& e = m.entries();
  if ((e - e.transpose()).cwiseAbs().maxCoeff() <= 1e-14) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(e);
    const RealVector decay = (es.eigenvalues() * t).array().exp();
    out = es.eigenvectors() * (decay.asDiagonal() * (es.eigenvectors().transpose() * p));
  } else {
    Eigen::EigenSolver<RealMatrix> es(e);
    const ComplexMatrix v = es.eigenvectors();
    const ComplexVector decay = (es.eigenvalues() * t).array().exp();
    const ComplexVector coeffs = v.partialPivLu().solve(p.cast<Complex>());
    out = (v * (decay.asDiagonal() * coeffs)).real();
  }
  return {out.data(), out.data() + out.size()};
}

ComplexVector schrodinger_solve(const Hamiltonian& h, const ComplexVector& psi0, double t) {
  if (psi0.size() != static_cast<Eigen::Index>(h.dim())) {
    throw Error(ErrorCode::DimensionMismatch, "psi0 length differs from Hamiltonian");
  }
  if (std::abs(psi0.norm() - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "psi0 must be normalised");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.entries());
  const ComplexVector phases =
      (es.eigenvalues().cast<Complex>() * Complex{0.0, -t}).array().exp();
  return es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi0));
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::LengthMismatch, "distributions have different lengths");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

double variance(const std::vector<double>& p, const std::vector<long>& positions) {
  if (p.size() != positions.size()) {
    throw Error(ErrorCode::LengthMismatch, "distribution and positions differ in length");
  }
  double mass = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mass += p[i];
    mean += p[i] * static_cast<double>(positions[i]);
  }
  mean /= mass;
  double var = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = static_cast<double>(positions[i]) - mean;
    var += p[i] * d * d;
  }
  return var / mass;
}

}  // namespace qsw::oracles
