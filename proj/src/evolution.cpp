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

#include "evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace qsw {

namespace {

using Triplet = Eigen::Triplet<Complex>;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::string describe(const StateDiagnostics& d) {
  std::ostringstream os;
  os.precision(3);
  os << "trace drift " << d.trace_drift << ", Hermiticity defect " << d.hermiticity
     << ", min eigenvalue " << d.min_eigenvalue;
  return os.str();
}

void check_omega(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) {
    throw Error(ErrorCode::OmegaOutOfRange, "omega must lie in [0, 1]");
  }
}

// Appends scale * kron(outer, inner) as triplets; outer acts on the bra index.
void add_kron(std::vector<Triplet>& out, const SparseComplex& outer, const SparseComplex& inner,
              Complex scale) {
  const Eigen::Index n = inner.rows();
  for (Eigen::Index oc = 0; oc < outer.outerSize(); ++oc) {
    for (SparseComplex::InnerIterator o(outer, oc); o; ++o) {
      for (Eigen::Index ic = 0; ic < inner.outerSize(); ++ic) {
        for (SparseComplex::InnerIterator i(inner, ic); i; ++i) {
          out.emplace_back(o.row() * n + i.row(), o.col() * n + i.col(),
                           scale * o.value() * i.value());
        }
      }
    }
  }
}

SparseComplex identity(std::size_t n) {
  SparseComplex id(idx(n), idx(n));
  id.setIdentity();
  return id;
}

}  // namespace

StateDiagnostics diagnose(const ComplexMatrix& rho) {
  StateDiagnostics d;
  d.trace_drift = std::abs(rho.trace() - Complex{1.0, 0.0});
  d.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(ComplexMatrix entries, const StateTolerance& tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be square and non-empty");
  }
  diagnostics_ = diagnose(entries_);
  if (diagnostics_.trace_drift > tol.trace || diagnostics_.hermiticity > tol.hermiticity ||
      diagnostics_.min_eigenvalue < tol.min_eigenvalue) {
    throw Error(ErrorCode::StateInvariantViolated, "invalid density matrix: " + describe(diagnostics_));
  }
}

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t vertex) {
  if (vertex >= dim) throw Error(ErrorCode::IndexOutOfRange, "origin vertex out of range");
  ComplexMatrix m = ComplexMatrix::Zero(idx(dim), idx(dim));
  m(idx(vertex), idx(vertex)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::Identity(idx(dim), idx(dim)) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probabilities) {
  ComplexMatrix m = ComplexMatrix::Zero(idx(probabilities.size()), idx(probabilities.size()));
  for (std::size_t i = 0; i < probabilities.size(); ++i) m(idx(i), idx(i)) = probabilities[i];
  return DensityMatrix(std::move(m));
}

ComplexMatrix lindblad_rhs(const Hamiltonian& h, const JumpOperatorSet& ls, double omega,
                           const ComplexMatrix& rho) {
  check_omega(omega);
  if (h.dim() != ls.dim() || rho.rows() != idx(h.dim()) || rho.cols() != idx(h.dim())) {
    throw Error(ErrorCode::DimensionMismatch, "H, {L_k} and rho dimensions differ");
  }
  const ComplexMatrix& hm = h.entries();
  ComplexMatrix out = (-(1.0 - omega) * kI) * (hm * rho - rho * hm);
  if (omega != 0.0 && !ls.empty()) {
    ComplexMatrix dissipator = -0.5 * (ls.decay() * rho);
    dissipator -= 0.5 * (rho * ls.decay());
    for (const SparseComplex& op : ls.operators()) {
      const ComplexMatrix op_rho = op * rho;
      dissipator += op_rho * op.adjoint();
    }
    out += omega * dissipator;
  }
  return out;
}

ComplexMatrix lindblad_rhs(const Hamiltonian& h, const JumpOperatorSet& ls, double omega,
                           const DensityMatrix& rho) {
  return lindblad_rhs(h, ls, omega, rho.entries());
}

ComplexVector vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim) {
  if (v.size() != idx(dim * dim)) {
    throw Error(ErrorCode::DimensionMismatch, "vector length is not dim^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), idx(dim), idx(dim));
}

Liouvillian::Liouvillian(Hamiltonian h, JumpOperatorSet ls, double omega)
    : h_(std::move(h)), ls_(std::move(ls)), omega_(omega) {
  check_omega(omega_);
  if (h_.dim() != ls_.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "H and {L_k} dimensions differ");
  }
  const std::size_t n = h_.dim();
  const SparseComplex id = identity(n);
  const SparseComplex hs = h_.entries().sparseView(1.0, 0.0);
  const SparseComplex ht = hs.transpose();
  std::vector<Triplet> triplets;

  // -(1 - omega) i (I (x) H - H^T (x) I)
  const Complex coherent = -(1.0 - omega_) * kI;
  if (coherent != Complex{0.0, 0.0}) {
    add_kron(triplets, id, hs, coherent);
    add_kron(triplets, ht, id, -coherent);
  }
  if (omega_ != 0.0) {
    for (const SparseComplex& op : ls_.operators()) {
      add_kron(triplets, SparseComplex(op.conjugate()), op, omega_);
    }
    const SparseComplex& k = ls_.decay();
    add_kron(triplets, id, k, -0.5 * omega_);
    add_kron(triplets, SparseComplex(k.transpose()), id, -0.5 * omega_);
  }

  SparseComplex s(idx(n * n), idx(n * n));
  s.setFromTriplets(triplets.begin(), triplets.end());
  s.makeCompressed();
  if (n >= kSparseThreshold) {
    matrix_ = std::move(s);
  } else {
    matrix_ = ComplexMatrix(s);
  }
}

ComplexVector Liouvillian::apply(const ComplexVector& v) const {
  return std::visit([&](const auto& m) -> ComplexVector { return m * v; }, matrix_);
}

ComplexMatrix Liouvillian::dense() const {
  return std::visit([](const auto& m) -> ComplexMatrix { return ComplexMatrix(m); }, matrix_);
}

SparseComplex Liouvillian::sparse() const {
  if (const auto* s = std::get_if<SparseComplex>(&matrix_)) return *s;
  return std::get<ComplexMatrix>(matrix_).sparseView(1.0, 0.0);
}

double Liouvillian::norm1() const {
  if (const auto* d = std::get_if<ComplexMatrix>(&matrix_)) {
    return d->cwiseAbs().colwise().sum().maxCoeff();
  }
  const auto& s = std::get<SparseComplex>(matrix_);
  double best = 0.0;
  for (Eigen::Index c = 0; c < s.outerSize(); ++c) {
    double col = 0.0;
    for (SparseComplex::InnerIterator it(s, c); it; ++it) col += std::abs(it.value());
    best = std::max(best, col);
  }
  return best;
}

Liouvillian build_liouvillian(const Hamiltonian& h, const JumpOperatorSet& ls, double omega) {
  return Liouvillian(h, ls, omega);
}

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::Auto: return "auto";
    case Method::MatrixExponential: return "matrix-exponential";
    case Method::AdaptiveRK: return "adaptive-rk";
  }
  return "unknown";
}

namespace {

void check_in_flight(const ComplexVector& v, std::size_t dim, const StateTolerance& tol,
                     double time) {
  Complex trace{0.0, 0.0};
  for (std::size_t a = 0; a < dim; ++a) trace += v(idx(a + dim * a));
  const double drift = std::abs(trace - Complex{1.0, 0.0});
  double herm = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a + 1; b < dim; ++b) {
      herm = std::max(herm, std::abs(v(idx(a + dim * b)) - std::conj(v(idx(b + dim * a)))));
    }
  }
  if (drift > tol.trace || herm > tol.hermiticity) {
    std::ostringstream os;
    os.precision(3);
    os << "state left tolerances at t = " << time << ": trace drift " << drift
       << ", Hermiticity defect " << herm;
    throw Error(ErrorCode::StateInvariantViolated, os.str());
  }
}

// Action of exp(A t) on v by s sub-steps of a truncated Taylor series, with s
// chosen so that each sub-step has ||A t / s||_1 <= 1. Terms are summed until
// two consecutive ones fall below machine precision relative to the partial
// sum.
ComplexVector taylor_expmv(const Liouvillian& l, ComplexVector v, double t,
                           const PropagationConfig& cfg, std::size_t& steps) {
  const double norm = l.norm1() * t;
  const auto substeps = static_cast<std::size_t>(std::max(1.0, std::ceil(norm)));
  const double h = t / static_cast<double>(substeps);
  constexpr int kMaxTerms = 60;
  constexpr double kEps = 1e-17;
  for (std::size_t s = 0; s < substeps; ++s) {
    ComplexVector term = v;
    ComplexVector sum = v;
    double prev = term.lpNorm<Eigen::Infinity>();
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
      term = l.apply(term) * (h / k);
      sum += term;
      const double cur = term.lpNorm<Eigen::Infinity>();
      if (cur + prev <= kEps * sum.lpNorm<Eigen::Infinity>()) {
        converged = true;
        break;
      }
      prev = cur;
    }
    if (!converged) {
      throw Error(ErrorCode::ToleranceNotMet, "Taylor series for exp(L t) v did not converge");
    }
    v = std::move(sum);
    ++steps;
    if (cfg.validate_every != 0 && steps % cfg.validate_every == 0) {
      check_in_flight(v, l.dim(), cfg.state_tolerance, h * static_cast<double>(s + 1));
    }
  }
  return v;
}

ComplexVector adaptive_rk(const Liouvillian& l, const ComplexVector& v0, double t,
                          const PropagationConfig& cfg, std::size_t& steps) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  const auto n = v0.size();

  // Complex vector stored as interleaved (re, im) pairs.
  State x(static_cast<std::size_t>(2 * n));
  Eigen::Map<ComplexVector>(reinterpret_cast<Complex*>(x.data()), n) = v0;

  auto system = [&](const State& in, State& out, double /*time*/) {
    Eigen::Map<const ComplexVector> vin(reinterpret_cast<const Complex*>(in.data()), n);
    Eigen::Map<ComplexVector>(reinterpret_cast<Complex*>(out.data()), n) = l.apply(vin);
  };
  constexpr std::size_t kMaxSteps = 10'000'000;
  auto observer = [&](const State& state, double time) {
    if (steps >= kMaxSteps) {
      throw Error(ErrorCode::ToleranceNotMet, "adaptive integrator exceeded the step budget");
    }
    if (cfg.validate_every != 0 && steps != 0 && steps % cfg.validate_every == 0) {
      Eigen::Map<const ComplexVector> v(reinterpret_cast<const Complex*>(state.data()), n);
      check_in_flight(v, l.dim(), cfg.state_tolerance, time);
    }
    ++steps;
  };

  auto stepper = odeint::make_controlled(cfg.abs_tol, cfg.rel_tol, cfg.max_step,
                                         odeint::runge_kutta_dopri5<State>());
  double dt0 = std::min(t, 1e-3);
  if (cfg.max_step > 0.0) dt0 = std::min(dt0, cfg.max_step);
  try {
    odeint::integrate_adaptive(stepper, system, x, 0.0, t, dt0, observer);
  } catch (const odeint::step_adjustment_error& e) {
    throw Error(ErrorCode::ToleranceNotMet, std::string("adaptive integrator: ") + e.what());
  }
  // The observer also fires for the initial state.
  if (steps > 0) --steps;
  return Eigen::Map<const ComplexVector>(reinterpret_cast<const Complex*>(x.data()), n);
}

}  // namespace

PropagationResult propagate(const DensityMatrix& rho0, const Liouvillian& liouvillian, double t,
                            const PropagationConfig& cfg) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::InvalidArgument, "propagation time must be finite and >= 0");
  }
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_step < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "solver tolerances must be > 0");
  }
  const std::size_t dim = liouvillian.dim();
  if (rho0.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "state and Liouvillian differ");

  Method method = cfg.method;
  if (method == Method::Auto) {
    method = dim <= PropagationConfig::kExpmMaxDim ? Method::MatrixExponential : Method::AdaptiveRK;
  }
  if (t == 0.0) return {rho0, method, 0};

  std::size_t steps = 0;
  ComplexVector v = vectorize(rho0.entries());
  if (method == Method::MatrixExponential && dim <= PropagationConfig::kDenseExpmMaxDim) {
    const ComplexMatrix propagator = (liouvillian.dense() * t).exp();
    v = propagator * v;
    steps = 1;
  } else if (method == Method::MatrixExponential) {
    v = taylor_expmv(liouvillian, std::move(v), t, cfg, steps);
  } else {
    v = adaptive_rk(liouvillian, v, t, cfg, steps);
  }

  ComplexMatrix rho = unvectorize(v, dim);
  return {DensityMatrix(std::move(rho), cfg.state_tolerance), method, steps};
}

Populations populations(const DensityMatrix& rho) {
  Populations p;
  p.values.resize(rho.dim());
  for (std::size_t a = 0; a < rho.dim(); ++a) {
    double value = rho.entries()(idx(a), idx(a)).real();
    if (value < 0.0 && value >= -1e-9) {
      value = 0.0;
      p.clamped = true;
    }
    p.values[a] = value;
  }
  return p;
}

double coherence_l1(const DensityMatrix& rho) {
  double total = 0.0;
  const auto n = rho.entries().rows();
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index alpha = 0; alpha < n; ++alpha) {
      if (a != alpha) total += std::abs(rho.entries()(a, alpha));
    }
  }
  return total;
}

}  // namespace qsw
