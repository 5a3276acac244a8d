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

#include "operators.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

#include <json.hpp>

namespace qsw {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

SparseComplex single_entry(std::size_t dim, std::size_t row, std::size_t col,
                           Complex value) {
  SparseComplex op(idx(dim), idx(dim));
  op.insert(idx(row), idx(col)) = value;
  op.makeCompressed();
  return op;
}

void check_index(std::size_t dim, std::size_t i) {
  if (i >= dim) {
    throw Error(ErrorCode::IndexOutOfRange,
                "vertex index " + std::to_string(i) + " >= dimension " +
                    std::to_string(dim));
  }
}

}  // namespace

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::EdgeLocal: return "EdgeLocal";
    case Regime::Global: return "Global";
    case Regime::Empty: return "Empty";
    case Regime::Custom: return "Custom";
  }
  return "Unknown";
}

Hamiltonian::Hamiltonian(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "Hamiltonian must be square and non-empty");
  }
  const double skew = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-14) {
    throw Error(ErrorCode::NonHermitianSource,
                "Hamiltonian is not Hermitian (max |H - H^dagger| = " +
                    std::to_string(skew) + ")");
  }
}

Hamiltonian Hamiltonian::zero(std::size_t dim) {
  return Hamiltonian(ComplexMatrix::Zero(idx(dim), idx(dim)));
}

Hamiltonian hamiltonian_from_generator(const GeneratorMatrix& m) {
  const RealMatrix& e = m.entries();
  const double asym = (e - e.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    throw Error(ErrorCode::NonHermitianSource,
                "generator is not symmetric (max |M - M^T| = " + std::to_string(asym) + ")");
  }
  // Symmetrise so rounding below the threshold cannot break exact Hermiticity.
  RealMatrix sym = 0.5 * (e + e.transpose());
  return Hamiltonian(sym.cast<Complex>());
}

JumpOperatorSet::JumpOperatorSet(std::size_t dim, std::vector<SparseComplex> operators,
                                 Regime regime)
    : dim_(dim), operators_(std::move(operators)), regime_(regime) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "jump operator dimension must be >= 1");
  decay_ = SparseComplex(idx(dim_), idx(dim_));
  for (auto& op : operators_) {
    if (op.rows() != idx(dim_) || op.cols() != idx(dim_)) {
      throw Error(ErrorCode::DimensionMismatch, "jump operator has wrong dimension");
    }
    op.makeCompressed();
    decay_ += SparseComplex(op.adjoint() * op);
  }
  decay_.makeCompressed();
}

JumpOperatorSet edge_jump_operators(const GeneratorMatrix& m,
                                    AmplitudeConvention convention) {
  std::vector<SparseComplex> ops;
  const std::size_t n = m.dim();
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      const double rate = m(a, b);
      if (a == b || rate == 0.0) continue;
      if (rate < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "negative off-diagonal rate in generator");
      }
      const double amplitude =
          convention == AmplitudeConvention::Sqrt ? std::sqrt(rate) : rate;
      ops.push_back(single_entry(n, a, b, amplitude));
    }
  }
  return JumpOperatorSet(n, std::move(ops), Regime::EdgeLocal);
}

JumpOperatorSet global_jump_operator(const GeneratorMatrix& m, GlobalOperatorShape shape) {
  RealMatrix entries = m.entries();
  if (shape == GlobalOperatorShape::OffDiagonal) entries.diagonal().setZero();
  SparseComplex op = entries.cast<Complex>().sparseView(1.0, 0.0);
  std::vector<SparseComplex> ops;
  ops.push_back(std::move(op));
  return JumpOperatorSet(m.dim(), std::move(ops), Regime::Global);
}

JumpOperatorSet empty_jump_operators(std::size_t dim) {
  return JumpOperatorSet(dim, {}, Regime::Empty);
}

TensorElement tensor_element(const Hamiltonian& h, const JumpOperatorSet& ls,
                             const TensorIndex& t) {
  const std::size_t n = h.dim();
  if (ls.dim() != n) throw Error(ErrorCode::DimensionMismatch, "H and {L_k} dimensions differ");
  for (std::size_t i : {t.a, t.alpha, t.b, t.beta}) check_index(n, i);

  const SparseComplex& k = ls.decay();
  Complex value{0.0, 0.0};
  if (t.alpha == t.beta) {
    value += -kI * h(t.a, t.b) - 0.5 * k.coeff(idx(t.a), idx(t.b));
  }
  if (t.a == t.b) {
    value += kI * h(t.beta, t.alpha) - 0.5 * k.coeff(idx(t.beta), idx(t.alpha));
  }
  for (const SparseComplex& op : ls.operators()) {
    // <beta|L^dagger|alpha> = conj(<alpha|L|beta>)
    value += op.coeff(idx(t.a), idx(t.b)) * std::conj(op.coeff(idx(t.alpha), idx(t.beta)));
  }
  return {t, value};
}

TensorElement axiom_rate(const Hamiltonian& h, const JumpOperatorSet& ls, int axiom,
                         std::size_t m, std::size_t n, std::size_t l) {
  const std::size_t dim = h.dim();
  if (ls.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "H and {L_k} dimensions differ");
  if (axiom < 1 || axiom > 6) {
    throw Error(ErrorCode::InvalidArgument, "axiom id must be in 1..6");
  }
  check_index(dim, m);
  if (axiom >= 2) check_index(dim, n);
  if (axiom >= 5) check_index(dim, l);
  if (axiom >= 2 && axiom <= 4 && m == n) {
    throw Error(ErrorCode::IndicesNotDistinct, "axioms 2-4 need m != n");
  }
  if (axiom >= 5 && (l == m || m == n || l == n)) {
    throw Error(ErrorCode::IndicesNotDistinct, "axioms 5 and 6 need l, m, n distinct");
  }

  const SparseComplex& k = ls.decay();
  auto lk = [](const SparseComplex& op, std::size_t r, std::size_t c) {
    return op.coeff(idx(r), idx(c));
  };
  // <r|L^dagger|c>
  auto lk_dag = [](const SparseComplex& op, std::size_t r, std::size_t c) {
    return std::conj(op.coeff(idx(c), idx(r)));
  };
  auto kk = [&](std::size_t r, std::size_t c) { return k.coeff(idx(r), idx(c)); };
  auto sum_ops = [&](auto&& term) {
    Complex s{0.0, 0.0};
    for (const SparseComplex& op : ls.operators()) s += term(op);
    return s;
  };

  switch (axiom) {
    case 1: {
      // |m><m| -> |m><m|
      Complex v = sum_ops([&](const SparseComplex& op) {
        return lk(op, m, m) * lk_dag(op, m, m);
      });
      v -= kk(m, m);
      return {{m, m, m, m}, v};
    }
    case 2: {
      // |m><m| -> |n><n|
      Complex v = sum_ops([&](const SparseComplex& op) {
        return lk(op, n, m) * lk_dag(op, m, n);
      });
      return {{n, n, m, m}, v};
    }
    case 3: {
      // |m><m| -> |m><n|
      Complex v = sum_ops([&](const SparseComplex& op) {
        return lk(op, m, m) * lk_dag(op, m, n);
      });
      v += kI * h(m, n) - 0.5 * kk(m, n);
      return {{m, n, m, m}, v};
    }
    case 4: {
      // |m><n| -> |m><n|
      Complex v = sum_ops([&](const SparseComplex& op) {
        return lk(op, m, m) * lk_dag(op, n, n);
      });
      v += -kI * h(m, m) + kI * h(n, n) - 0.5 * kk(m, m) - 0.5 * kk(n, n);
      return {{m, n, m, n}, v};
    }
    case 5: {
      // |m><n| -> |l><n|
      Complex v = sum_ops([&](const SparseComplex& op) {
        return lk(op, l, m) * lk_dag(op, n, n);
      });
      v += -kI * h(l, m) - 0.5 * kk(l, m);
      return {{l, n, m, n}, v};
    }
    default: {
      // |m><m| -> |l><n|
      Complex v = sum_ops([&](const SparseComplex& op) {
        return lk(op, l, m) * lk_dag(op, m, n);
      });
      return {{l, n, m, m}, v};
    }
  }
}

namespace {

// Dense H and K plus a hash of the jump-operator product term, so that all
// dim^4 elements can be scanned without summing over operators each time.
class TensorEvaluator {
 public:
  TensorEvaluator(const Hamiltonian& h, const JumpOperatorSet& ls)
      : n_(h.dim()), h_(h.entries()), k_(ls.decay()) {
    for (const SparseComplex& op : ls.operators()) {
      std::vector<std::pair<std::size_t, std::size_t>> nz;
      std::vector<Complex> vals;
      for (Eigen::Index c = 0; c < op.outerSize(); ++c) {
        for (SparseComplex::InnerIterator it(op, c); it; ++it) {
          nz.emplace_back(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()));
          vals.push_back(it.value());
        }
      }
      for (std::size_t i = 0; i < nz.size(); ++i) {
        for (std::size_t j = 0; j < nz.size(); ++j) {
          const auto [a, b] = nz[i];
          const auto [alpha, beta] = nz[j];
          jump_[key({a, alpha, b, beta})] += vals[i] * std::conj(vals[j]);
        }
      }
    }
  }

  Complex operator()(const TensorIndex& t) const {
    Complex v{0.0, 0.0};
    if (t.alpha == t.beta) v += -kI * h_(idx(t.a), idx(t.b)) - 0.5 * k_(idx(t.a), idx(t.b));
    if (t.a == t.b) v += kI * h_(idx(t.beta), idx(t.alpha)) - 0.5 * k_(idx(t.beta), idx(t.alpha));
    if (auto it = jump_.find(key(t)); it != jump_.end()) v += it->second;
    return v;
  }

 private:
  std::uint64_t key(const TensorIndex& t) const {
    return ((static_cast<std::uint64_t>(t.a) * n_ + t.alpha) * n_ + t.b) * n_ + t.beta;
  }

  std::size_t n_;
  ComplexMatrix h_;
  ComplexMatrix k_;
  std::unordered_map<std::uint64_t, Complex> jump_;
};

constexpr std::size_t kMaxListed = 32;

nlohmann::ordered_json element_json(const TensorElement& e) {
  return {{"a", e.index.a},
          {"alpha", e.index.alpha},
          {"b", e.index.b},
          {"beta", e.index.beta},
          {"re", e.value.real()},
          {"im", e.value.imag()}};
}

}  // namespace

AuditReport audit_axioms(const Hamiltonian& h, const JumpOperatorSet& ls, const Graph& g,
                         double tol) {
  const std::size_t n = g.n_vertices();
  if (h.dim() != n || ls.dim() != n) {
    throw Error(ErrorCode::DimensionMismatch, "audit inputs disagree on dimension");
  }
  AuditReport report;
  report.dim = n;
  report.regime = ls.regime();
  report.tolerance = tol;

  auto record = [&](int axiom, std::size_t m, std::size_t nn, std::size_t l) {
    const TensorElement f = axiom_rate(h, ls, axiom, m, nn, l);
    const TensorElement t = tensor_element(h, ls, f.index);
    // The conjugate element swaps ket and bra roles.
    const TensorIndex ci{f.index.alpha, f.index.a, f.index.beta, f.index.b};
    const TensorElement tc = tensor_element(h, ls, ci);
    const double dev = std::abs(f.value - t.value);
    const double dev_c = std::abs(std::conj(f.value) - tc.value);
    report.axiom_checks += 2;
    report.max_axiom_deviation = std::max({report.max_axiom_deviation, dev, dev_c});
    if (dev > tol && report.axiom_failures.size() < kMaxListed) {
      report.axiom_failures.push_back({axiom, m, nn, l, false, f.index, f.value, t.value, dev});
    }
    if (dev_c > tol && report.axiom_failures.size() < kMaxListed) {
      report.axiom_failures.push_back(
          {axiom, m, nn, l, true, ci, std::conj(f.value), tc.value, dev_c});
    }
    if (std::abs(t.value) > tol) {
      ++report.nonzero_by_axiom[static_cast<std::size_t>(axiom)];
      if (axiom == 6) report.axiom6_nonzero.push_back(t);
    }
  };

  for (std::size_t m = 0; m < n; ++m) {
    record(1, m, 0, 0);
    const auto& nbrs = g.neighbors(m);
    for (std::size_t nn : nbrs) {
      record(2, m, nn, 0);
      record(3, m, nn, 0);
      record(4, m, nn, 0);
      for (std::size_t l : nbrs) {
        if (l == nn) continue;
        record(5, m, nn, l);
        record(6, m, nn, l);
      }
    }
  }

  const TensorEvaluator eval(h, ls);
  auto local = [&](std::size_t x, std::size_t y) { return x == y || g.adjacent(x, y); };
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t beta = 0; beta < n; ++beta) {
      Complex trace_flow{0.0, 0.0};
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t alpha = 0; alpha < n; ++alpha) {
          const TensorIndex t{a, alpha, b, beta};
          const Complex v = eval(t);
          ++report.elements_scanned;
          if (a == alpha) trace_flow += v;
          if (v == Complex{0.0, 0.0}) continue;
          if (!local(a, b) || !local(alpha, beta)) {
            ++report.nonlocal_nonzero;
            if (report.nonlocal_examples.size() < kMaxListed) {
              report.nonlocal_examples.push_back({t, v});
            }
            if (a == alpha && b == beta) ++report.population_rate_violations;
          }
        }
      }
      report.max_trace_defect = std::max(report.max_trace_defect, std::abs(trace_flow));
    }
  }

  report.passed = report.max_axiom_deviation <= tol && report.nonlocal_nonzero == 0 &&
                  report.max_trace_defect <= tol;
  return report;
}

std::string AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["regime"] = to_string(regime);
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  j["elements_scanned"] = elements_scanned;
  j["axiom_checks"] = axiom_checks;
  j["max_axiom_deviation"] = max_axiom_deviation;
  j["max_trace_defect"] = max_trace_defect;
  auto& failures = j["axiom_failures"] = nlohmann::ordered_json::array();
  for (const AxiomCheck& c : axiom_failures) {
    failures.push_back({{"axiom", c.axiom},
                        {"m", c.m},
                        {"n", c.n},
                        {"l", c.l},
                        {"conjugate", c.conjugate},
                        {"index", {c.index.a, c.index.alpha, c.index.b, c.index.beta}},
                        {"formula", {c.formula.real(), c.formula.imag()}},
                        {"tensor", {c.tensor.real(), c.tensor.imag()}},
                        {"deviation", c.deviation}});
  }
  j["nonlocal_nonzero"] = nonlocal_nonzero;
  j["population_rate_violations"] = population_rate_violations;
  auto& offenders = j["nonlocal_examples"] = nlohmann::ordered_json::array();
  for (const TensorElement& e : nonlocal_examples) offenders.push_back(element_json(e));
  auto& counts = j["nonzero_by_axiom"] = nlohmann::ordered_json::object();
  for (int a = 1; a <= 6; ++a) counts[std::to_string(a)] = nonzero_by_axiom[static_cast<std::size_t>(a)];
  auto& ax6 = j["axiom6_nonzero"] = nlohmann::ordered_json::array();
  for (const TensorElement& e : axiom6_nonzero) ax6.push_back(element_json(e));
  return j.dump(2);
}

}  // namespace qsw
