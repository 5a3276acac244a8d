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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "support.hpp"

using namespace qsw;

namespace {

// J_j(10)^2 and exp(-10) I_j(10), 30-digit arithmetic, rounded to 20 digits.
struct Frozen {
  int order;
  double j_squared;
  double scaled_i;
};
constexpr Frozen kFrozen[] = {
    {0, 0.060484400236269091498, 0.12783333716342860732},
    {1, 0.0018898796594622567196, 0.12126268138445551872},
    {5, 0.054784798977137193841, 0.035284293614933962722},
    {10, 0.04305048444586956257, 0.00099388192221399772163},
    {20, 1.3255767143649524506e-10, 5.6786220145215239128e-9},
};

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("Bessel sequences against frozen values") {
  const auto j = oracles::bessel_j_sequence(30, 10.0);
  const auto i = oracles::scaled_bessel_i_sequence(30, 10.0);
  REQUIRE(j.size() == 31);
  REQUIRE(i.size() == 31);
  for (const Frozen& f : kFrozen) {
    const auto k = static_cast<std::size_t>(f.order);
    CHECK(rel_err(j[k] * j[k], f.j_squared) <= 1e-12);
    CHECK(rel_err(i[k], f.scaled_i) <= 1e-12);
  }
}

TEST_CASE("Bessel sequences against independent implementations") {
  for (double x : {0.5, 2.0, 10.0, 24.0}) {
    const auto j = oracles::bessel_j_sequence(40, x);
    const auto i = oracles::scaled_bessel_i_sequence(40, x);
    for (int n = 0; n <= 40; ++n) {
      const double jr = std::cyl_bessel_j(static_cast<double>(n), x);
      CHECK(std::abs(j[static_cast<std::size_t>(n)] - jr) <= 1e-13);
      const double ir = qsw_test::series_scaled_bessel_i(n, x);
      CHECK(std::abs(i[static_cast<std::size_t>(n)] - ir) <= 1e-14);
      if (x <= 10.0) {
        const double is = std::cyl_bessel_i(static_cast<double>(n), x) * std::exp(-x);
        CHECK(std::abs(i[static_cast<std::size_t>(n)] - is) <= 1e-13);
      }
    }
  }
  CHECK(oracles::bessel_j_sequence(3, 0.0)[0] == 1.0);
  CHECK(oracles::bessel_j_sequence(3, 0.0)[2] == 0.0);
  CHECK(oracles::scaled_bessel_i_sequence(3, 0.0)[0] == 1.0);
}

TEST_CASE("line distributions") {
  const oracles::LineWalkSpec spec;  // 61 sites, gamma 1, t 5
  const auto crw = oracles::crw_line_analytic(spec);
  const auto qw = oracles::qw_line_analytic(spec);
  REQUIRE(crw.positions.size() == 61);
  CHECK(crw.positions.front() == -30);
  CHECK(crw.positions[30] == 0);
  CHECK(rel_err(crw.probabilities[30], kFrozen[0].scaled_i) <= 1e-12);
  CHECK(rel_err(crw.probabilities[30 - 5], kFrozen[2].scaled_i) <= 1e-12);
  CHECK(rel_err(qw.probabilities[30 + 10], kFrozen[3].j_squared) <= 1e-12);
  CHECK(crw.tail_mass < 1e-12);
  CHECK(qw.tail_mass < 1e-12);
  // Diffusive 2 gamma t against ballistic 2 gamma^2 t^2.
  CHECK(oracles::variance(crw.probabilities, crw.positions) == doctest::Approx(10.0).epsilon(1e-10));
  CHECK(oracles::variance(qw.probabilities, qw.positions) == doctest::Approx(50.0).epsilon(1e-10));

  oracles::LineWalkSpec bad;
  bad.n_sites = 60;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.n_sites = 61;
  bad.t = -1.0;
  CHECK_THROWS_AS(oracles::crw_line_analytic(bad), Error);
}

TEST_CASE("classical master solve") {
  // Three sites: exp(M)(1, 1) with M = [[-1, 1, 0], [1, -2, 1], [0, 1, -1]]
  // is 1/3 + 2/3 exp(-3) by diagonalisation.
  const GeneratorMatrix m3 = classical_generator(build_line(3, 1.0));
  const auto p3 = oracles::classical_master_solve(m3, {0.0, 1.0, 0.0}, 1.0);
  CHECK(std::abs(p3[1] - (1.0 / 3.0 + 2.0 / 3.0 * std::exp(-3.0))) <= 1e-14);
  CHECK(std::abs(p3[1] - 0.3665247122452444) <= 1e-14);

  // A line wide enough for the walker to stay inside reproduces the
  // infinite-line distribution.
  const GeneratorMatrix m41 = classical_generator(build_line(41, 1.0));
  std::vector<double> p0(41, 0.0);
  p0[20] = 1.0;
  const auto p = oracles::classical_master_solve(m41, p0, 1.0);
  oracles::LineWalkSpec spec;
  spec.n_sites = 41;
  spec.t = 1.0;
  const auto analytic = oracles::crw_line_analytic(spec);
  for (std::size_t k = 0; k < 41; ++k) CHECK(std::abs(p[k] - analytic.probabilities[k]) <= 1e-13);

  // Asymmetric generator goes through the general eigen-solver.
  RealMatrix asym(2, 2);
  asym << -1.0, 3.0, 1.0, -3.0;
  const auto pa = oracles::classical_master_solve(GeneratorMatrix(asym), {1.0, 0.0}, 0.5);
  const double expected = 0.75 + 0.25 * std::exp(-2.0);  // stationary 3/4
  CHECK(std::abs(pa[0] - expected) <= 1e-13);
  CHECK(std::abs(pa[0] + pa[1] - 1.0) <= 1e-14);
}

TEST_CASE("Schrodinger solve on a two-level system") {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 1) = h(1, 0) = 1.0;
  ComplexVector psi(2);
  psi << 1.0, 0.0;
  const ComplexVector out = oracles::schrodinger_solve(Hamiltonian(h), psi, 0.3);
  CHECK(std::abs(out(0) - Complex(std::cos(0.3), 0.0)) <= 1e-14);
  CHECK(std::abs(out(1) - Complex(0.0, -std::sin(0.3))) <= 1e-14);
  psi(0) = 2.0;
  CHECK_THROWS_AS(oracles::schrodinger_solve(Hamiltonian(h), psi, 0.3), Error);
}

TEST_CASE("distances and moments") {
  CHECK(oracles::total_variation({0.5, 0.5}, {1.0, 0.0}) == 0.5);
  CHECK(oracles::total_variation({0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}) == 0.0);
  try {
    oracles::total_variation({1.0}, {0.5, 0.5});
    FAIL("length mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthMismatch);
  }
  CHECK(oracles::variance({0.5, 0.0, 0.5}, {-1, 0, 1}) == 1.0);
  CHECK(oracles::variance({0.0, 0.0, 1.0}, {-1, 0, 1}) == 0.0);
}
