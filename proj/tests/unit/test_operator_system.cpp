// Copyright 2026 The opsys Authors
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

#include <catch_amalgamated.hpp>

#include "opsys/errors.hpp"
#include "opsys/operator_system.hpp"
#include "oracles.hpp"

using namespace opsys;
using Catch::Approx;

namespace {

void check_orthonormal(const OperatorSystem& s) {
  const int d = s.d();
  REQUIRE(s.dim() >= 1);
  CHECK((s.basis(0) - ComplexMatrix::Identity(d, d) / std::sqrt(double(d))).norm() < 1e-12);
  for (int i = 0; i < s.dim(); ++i) {
    CHECK(asymmetry(s.basis(i)) < 1e-12);
    if (i > 0) CHECK(std::abs(s.basis(i).trace()) < 1e-12);
    for (int j = 0; j < s.dim(); ++j) {
      const Complex ip = (s.basis(i).adjoint() * s.basis(j)).trace();
      CHECK(std::abs(ip - Complex(i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

}  // namespace

TEST_CASE("builtin systems have the expected dimensions", "[opsys-model]") {
  CHECK(builtin_system("full:3").dim() == 9);
  CHECK(builtin_system("full:3").is_full());
  CHECK(builtin_system("pauli-span").dim() == 3);
  CHECK(builtin_system("diag:4").dim() == 4);
  CHECK(builtin_system("toeplitz:3").dim() == 5);  // I, S, S^2 and adjoints
  CHECK_THROWS_AS(builtin_system("full:0"), ParseError);
  CHECK_THROWS_AS(builtin_system("circle:2"), ParseError);
  for (const char* name : {"full:3", "pauli-span", "diag:4", "toeplitz:4"}) {
    check_orthonormal(builtin_system(name));
  }
}

TEST_CASE("operator system generated by a single matrix unit", "[opsys-model]") {
  // span{I, E_12, E_21} in M_2.
  const OperatorSystem s = make_operator_system({oracle::unit(2, 0, 1)}, 2);
  CHECK(s.dim() == 3);
  check_orthonormal(s);
  CHECK(s.contains(oracle::unit(2, 1, 0)));
  CHECK_FALSE(s.contains(oracle::unit(2, 0, 0)));
  // Distance of E_11 to span{I, X, Y} is ||Z||/2 = 1/sqrt(2).
  CHECK(s.residual(oracle::unit(2, 0, 0)) == Approx(1.0 / std::sqrt(2.0)));
  // Generators that are already in the span do not add dimensions.
  const OperatorSystem t =
      make_operator_system({oracle::unit(2, 0, 1), oracle::pauli_x()}, 2);
  CHECK(t.dim() == 3);
}

TEST_CASE("coordinates and projection", "[opsys-model][property]") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = uniform_int(rng, 2, 5);
    const OperatorSystem s = random_system(rng, d, uniform_int(rng, 1, 3));
    check_orthonormal(s);
    const ComplexMatrix x = random_element(s, rng);
    CHECK(s.residual(x) < 1e-10);
    CHECK((s.from_coordinates(s.coordinates(x)) - x).norm() < 1e-10);
    // Projection is idempotent, self-adjoint and closed under adjoints.
    const ComplexMatrix y = random_gaussian(rng, d, d);
    const ComplexMatrix p = s.project(y);
    CHECK((s.project(p) - p).norm() < 1e-10);
    CHECK(s.residual(p.adjoint()) < 1e-10);
    CHECK(std::abs(((y - p).adjoint() * x).trace()) < 1e-10);
    // Hermitian elements have real coordinates.
    const ComplexMatrix h = random_hermitian_element(s, rng);
    CHECK(s.coordinates(h).imag().norm() < 1e-12);
  }
}

TEST_CASE("amplification is M_n(S)", "[opsys-model][property]") {
  Rng rng(22);
  const OperatorSystem s = random_system(rng, 3, 2);
  for (int n = 1; n <= 3; ++n) {
    const OperatorSystem big = amplify(s, n);
    CHECK(big.d() == 3 * n);
    CHECK(big.dim() == n * n * s.dim());
    check_orthonormal(big);
    const LevelElement x = random_level_element(s, n, rng);
    CHECK(big.contains(x.flat()));
    CHECK(subspace_member(s, x));
  }
  CHECK_THROWS_AS(amplify(s, 0), DimensionError);
}

TEST_CASE("level elements use the block flattening", "[opsys-model]") {
  std::vector<std::vector<ComplexMatrix>> grid(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) grid[i].push_back((i * 2 + j + 1) * ComplexMatrix::Identity(2, 2));
  const LevelElement x = LevelElement::from_grid(grid);
  CHECK(x.n() == 2);
  CHECK(x.d() == 2);
  CHECK(x.flat()(0, 2) == Complex(2, 0));  // block (0, 1)
  CHECK(x.flat()(3, 1) == Complex(3, 0));  // block (1, 0)
  CHECK((x.block(1, 1) - 4.0 * ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  const LevelElement e = LevelElement::diagonal(3, pauli_z());
  CHECK((e.flat() - kron(ComplexMatrix::Identity(3, 3), pauli_z())).norm() == 0.0);
  CHECK_THROWS_AS(LevelElement(2, 3, ComplexMatrix::Zero(5, 5)), DimensionError);
}

TEST_CASE("cone membership", "[opsys-model]") {
  const OperatorSystem m2 = builtin_system("full:2");
  CHECK(cone_member(m2, LevelElement::level1(oracle::unit(2, 0, 0))));
  CHECK_FALSE(cone_member(m2, LevelElement::level1(pauli_z())));
  // Not in the system at all.
  const OperatorSystem d2 = builtin_system("diag:2");
  ComplexMatrix ones = ComplexMatrix::Ones(2, 2);
  CHECK_FALSE(cone_member(d2, LevelElement::level1(ones)));
  // Level 2: [[I, X], [X, I]] has eigenvalues 0 and 2.
  std::vector<std::vector<ComplexMatrix>> g = {{m2.unit(), pauli_x()},
                                               {pauli_x(), m2.unit()}};
  CHECK(cone_member(m2, LevelElement::from_grid(g)));
  g[0][1] = 2.0 * pauli_x();
  g[1][0] = 2.0 * pauli_x();
  CHECK_FALSE(cone_member(m2, LevelElement::from_grid(g)));
}

TEST_CASE("order unit radius matches the whitened eigenvalue oracle",
          "[opsys-model][property]") {
  // r(x) = max(0, lambda_max(e^{-1/2} x e^{-1/2})) for positive definite e.
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = uniform_int(rng, 2, 4);
    const OperatorSystem s = random_system(rng, d, 2);
    const ComplexMatrix h = random_hermitian_element(s, rng);
    const ComplexMatrix e = s.unit() + 0.5 * h / hermitian_norm(h);
    const int n = uniform_int(rng, 1, 3);
    const LevelElement x = random_level_hermitian(s, n, rng);
    const auto r = order_unit_radius_level(s, e, x);
    REQUIRE(r.has_value());
    const ComplexMatrix big = kron(ComplexMatrix::Identity(n, n), e);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(big);
    const ComplexMatrix w = es.operatorInverseSqrt();
    const double expect =
        std::max(0.0, oracle::lambda_max(w * x.flat() * w.adjoint()));
    CHECK(*r == Approx(expect).margin(1e-7));
  }
}

TEST_CASE("order unit radius edge cases", "[opsys-model]") {
  const OperatorSystem m2 = builtin_system("full:2");
  CHECK(*order_unit_radius_level(m2, m2.unit(), LevelElement::level1(-m2.unit())) == 0.0);
  CHECK(*order_unit_radius_level(m2, m2.unit(), LevelElement::level1(pauli_z())) ==
        Approx(1.0).margin(1e-8));
  CHECK_THROWS_AS(
      order_unit_radius_level(m2, m2.unit(), LevelElement::level1(oracle::unit(2, 0, 1))),
      NotHermitianError);
  const OperatorSystem d2 = builtin_system("diag:2");
  const ComplexMatrix e = oracle::unit(2, 0, 0);
  CHECK_FALSE(order_unit_radius_level(d2, e, LevelElement::level1(oracle::unit(2, 1, 1))));
}

TEST_CASE("matrix order unit detection", "[opsys-model]") {
  Rng rng(24);
  const OperatorSystem s = builtin_system("toeplitz:3");
  const MatrixOrderUnitReport good = is_matrix_order_unit(s, s.unit(), 3, rng, 8);
  CHECK(good.is_unit);
  REQUIRE(good.levels.size() == 3);
  for (const auto& l : good.levels) CHECK(l.dominated == l.samples);
  // At level 1 the maximal radius over +-B_i equals max |eigenvalue|.
  CHECK_FALSE(good.counterexample);

  const OperatorSystem d2 = builtin_system("diag:2");
  const MatrixOrderUnitReport bad =
      is_matrix_order_unit(d2, oracle::unit(2, 0, 0), 2, rng, 8);
  CHECK_FALSE(bad.is_unit);
  REQUIRE(bad.counterexample);
  CHECK(bad.counterexample->n() == 1);
}

TEST_CASE("samplers stay inside the system", "[opsys-model][property]") {
  Rng rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = uniform_int(rng, 2, 4);
    const OperatorSystem s = random_system(rng, d, uniform_int(rng, 1, 3));
    const int n = uniform_int(rng, 1, 3);
    const LevelElement p = random_level_positive(s, n, rng, 0.0);
    CHECK(subspace_member(s, p));
    CHECK(std::abs(oracle::lambda_min(p.flat())) < 1e-9);
    CHECK(cone_member(s, p));
    const LevelElement neg = random_level_positive(s, n, rng, -0.1);
    CHECK_FALSE(cone_member(s, neg));
    CHECK(asymmetry(random_level_hermitian(s, n, rng).flat()) < 1e-12);
  }
}
