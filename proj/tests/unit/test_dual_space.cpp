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

#include "opsys/dual_space.hpp"
#include "opsys/errors.hpp"
#include "oracles.hpp"

using namespace opsys;
using Catch::Approx;

namespace {

SystemPtr full(int d) { return share(builtin_system("full:" + std::to_string(d))); }

// [f_ij] with f_ij(x) = x_ij on M_d (identity map) or x_ji (transpose).
MatrixFunctional entry_map(const SystemPtr& s, bool transpose) {
  const int d = s->d();
  std::vector<std::vector<Functional>> g(d, std::vector<Functional>(d, Functional::zero(s)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      g[i][j] = Functional(s, transpose ? oracle::unit(d, i, j) : oracle::unit(d, j, i));
    }
  }
  return MatrixFunctional(g);
}

}  // namespace

TEST_CASE("functionals are determined by their values on S", "[dual-space]") {
  const SystemPtr s = share(make_operator_system({oracle::pauli_x()}, 2));
  // Z is orthogonal to span{I, X}, so tr(Z .) vanishes on S.
  const Functional fz(s, oracle::pauli_z());
  CHECK(fz.canonical().norm() < 1e-12);
  CHECK(std::abs(fz.eval(oracle::pauli_x())) < 1e-12);
  const Functional f(s, oracle::pauli_x() + oracle::pauli_z());
  CHECK(std::abs(f.eval(oracle::pauli_x()) - Complex(2.0)) < 1e-12);
  CHECK(std::abs(f.eval(ComplexMatrix::Identity(2, 2))) < 1e-12);
  CHECK_THROWS_AS(f.eval(oracle::pauli_z()), MembershipError);
  const Functional g = Functional::from_coordinates(s, f.coordinates());
  CHECK((g.canonical() - f.canonical()).norm() < 1e-12);
  CHECK_THROWS_AS(Functional(s, ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("functional algebra and adjoint", "[dual-space][property]") {
  Rng rng(61);
  const SystemPtr s = share(random_system(rng, 3, 2));
  for (int trial = 0; trial < 10; ++trial) {
    const Functional f(s, random_gaussian(rng, 3, 3));
    const Functional g(s, random_gaussian(rng, 3, 3));
    const ComplexMatrix x = random_element(*s, rng);
    const Complex c(gaussian(rng), gaussian(rng));
    CHECK(std::abs((f + g * c).eval(x) - (f.eval(x) + c * g.eval(x))) < 1e-10);
    CHECK(std::abs((f - g).eval(x) - (f.eval(x) - g.eval(x))) < 1e-10);
    CHECK(std::abs(f.adjoint().eval(x) - std::conj(f.eval(x.adjoint()))) < 1e-10);
    const Functional h = f + f.adjoint();
    CHECK(h.is_hermitian());
  }
}

TEST_CASE("positivity on small systems", "[dual-space]") {
  const SystemPtr m2 = full(2);
  CHECK(positivity(Functional(m2, oracle::pauli_x())).decision == Decision::no);
  CHECK(positivity(Functional(m2, ComplexMatrix::Identity(2, 2))).decision ==
        Decision::yes);
  const SystemPtr sx = share(make_operator_system({oracle::pauli_x()}, 2));
  const ComplexMatrix half = (ComplexMatrix::Identity(2, 2) + oracle::pauli_x()) / 2.0;
  CHECK(positivity(Functional(sx, half)).decision == Decision::yes);
  CHECK(positivity(Functional(sx, oracle::pauli_x())).decision == Decision::no);
  // Not positive as a matrix, but zero on S.
  CHECK(positivity(Functional(sx, oracle::pauli_z())).decision == Decision::yes);
  // Non-Hermitian functionals take a non-real value on some positive element.
  const PositivityReport r =
      positivity(Functional(m2, Complex(0, 1) * ComplexMatrix::Identity(2, 2)));
  CHECK(r.decision == Decision::no);
  CHECK(oracle::lambda_min(r.witness) >= -1e-12);
}

TEST_CASE("positivity agrees with closed forms", "[dual-space][property]") {
  Rng rng(62);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = uniform_int(rng, 2, 5);
    const ComplexMatrix c = oracle::hermitian(rng, d);
    // Full algebra: least eigenvalue.
    CHECK(is_positive_functional(Functional(full(d), c)) ==
          (oracle::lambda_min(c) >= -kDualTol));
    // Diagonal algebra: least diagonal entry.
    double dmin = c(0, 0).real();
    for (int i = 1; i < d; ++i) dmin = std::min(dmin, c(i, i).real());
    const SystemPtr diag = share(builtin_system("diag:" + std::to_string(d)));
    CHECK(is_positive_functional(Functional(diag, c)) == (dmin >= -kDualTol));
  }
}

TEST_CASE("identity map is CP, transpose is not", "[dual-space]") {
  for (int d = 2; d <= 3; ++d) {
    const SystemPtr s = full(d);
    const CpVerdict id = is_cp(entry_map(s, false));
    CHECK(id.decision == Decision::yes);
    CHECK(id.route == "choi-eigenvalue");
    CHECK(is_cp(entry_map(s, true)).decision == Decision::no);
    CpOptions forced;
    forced.force_solver = true;
    CHECK(is_cp(entry_map(s, false), forced).decision == Decision::yes);
    const CpVerdict t = is_cp(entry_map(s, true), forced);
    CHECK(t.route == "dykstra");
    CHECK(t.decision == Decision::no);
  }
}

TEST_CASE("choi matrix pairs with block units", "[dual-space][property]") {
  Rng rng(63);
  const SystemPtr s = share(random_system(rng, 3, 2));
  const MatrixFunctional mf = random_hermitian_matrix_functional(s, 2, rng);
  CHECK(mf.is_hermitian());
  const ComplexMatrix w = mf.choi();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (const auto& b : s->basis()) {
        const Complex lhs = (w * kron(oracle::unit(2, i, j), b)).trace();
        CHECK(std::abs(lhs - mf(i, j).eval(b)) < 1e-10);
      }
    }
  }
}

TEST_CASE("eigenvalue and solver routes agree on M_d", "[dual-space][property]") {
  Rng rng(64);
  CpOptions forced;
  forced.force_solver = true;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = uniform_int(rng, 2, 3);
    const int n = uniform_int(rng, 1, 2);
    const SystemPtr s = full(d);
    MatrixFunctional mf = random_hermitian_matrix_functional(s, n, rng);
    // Move the Choi spectrum so its minimum sits at +-margin.
    const double lmin = oracle::lambda_min(mf.choi());
    const double margin = uniform(rng, 1e-3, 0.3) * (trial % 2 == 0 ? 1.0 : -1.0);
    const Functional shift(s, (margin - lmin) * ComplexMatrix::Identity(d, d));
    mf = mf + MatrixFunctional::diagonal(n, shift);
    const CpVerdict a = is_cp(mf);
    const CpVerdict b = is_cp(mf, forced);
    CHECK(a.route == "choi-eigenvalue");
    CHECK(a.decision == (margin > 0 ? Decision::yes : Decision::no));
    CHECK(b.decision == a.decision);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("level-one CP is positivity, warm or cold", "[dual-space][property]") {
  Rng rng(65);
  CpOptions cold;
  cold.warm_start = false;
  cold.max_iter = 200000;
  for (int trial = 0; trial < 50; ++trial) {
    const int d = uniform_int(rng, 2, 3);
    const SystemPtr s = share(random_system(rng, d, 1));
    const double margin = uniform(rng, 0.02, 0.3) * (trial % 2 == 0 ? 1.0 : -1.0);
    const ComplexMatrix c = oracle::hermitian(rng, d);
    const SectionResult r = section_minimize(*s, c);
    const Functional f(s, c + (margin - r.lower) * ComplexMatrix::Identity(d, d));
    const Decision expect = margin > 0 ? Decision::yes : Decision::no;
    CHECK(positivity(f).decision == expect);
    const MatrixFunctional mf = MatrixFunctional::diagonal(1, f);
    CHECK(is_cp(mf).decision == expect);
    CHECK(is_cp(mf, cold).decision == expect);
  }
}

TEST_CASE("mixed systems are rejected", "[dual-space]") {
  const SystemPtr a = full(2);
  const SystemPtr b = share(builtin_system("pauli-span"));
  std::vector<std::vector<Functional>> g = {
      {Functional::zero(a), Functional::zero(b)},
      {Functional::zero(a), Functional::zero(a)}};
  CHECK_THROWS_AS(MatrixFunctional(g), ValidationError);
}

TEST_CASE("dual order unit radius on full algebras", "[dual-space]") {
  Rng rng(66);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = uniform_int(rng, 2, 4);
    const SystemPtr s = full(d);
    const Functional delta = faithful_state(s);
    const ComplexMatrix c = oracle::hermitian(rng, d);
    const Functional g(s, c);
    const double expect = d * oracle::lambda_max(c);
    for (int level = 1; level <= 2; ++level) {
      const DualRadius r = dual_order_unit_radius(delta, g, level);
      REQUIRE(r.status == RadiusStatus::found);
      // Level 1 certifies exactly; higher levels accept a Choi eigenvalue down
      // to -kDualTol, i.e. r down to d (lambda_max - kDualTol).
      const double slack = level == 1 ? 1e-9 : d * kDualTol;
      CHECK(r.r >= expect - slack);
      CHECK(r.r <= expect + 2e-6);
    }
  }
  const SystemPtr s = full(2);
  const Functional delta = faithful_state(s);
  const DualRadius one = dual_order_unit_radius(delta, delta, 1);
  REQUIRE(one.status == RadiusStatus::found);
  CHECK(one.r == Approx(1.0).margin(1e-6));
  const DualRadius neg = dual_order_unit_radius(delta, delta * Complex(-2.0), 1);
  REQUIRE(neg.status == RadiusStatus::found);
  CHECK(neg.r == Approx(-2.0).margin(1e-6));
  CHECK_THROWS_AS(dual_order_unit_radius(delta, Functional(s, oracle::unit(2, 0, 1)), 1),
                  NotHermitianError);
}

TEST_CASE("pure states are not faithful and dominate nothing", "[dual-space]") {
  const SystemPtr s = full(2);
  ComplexVector e0 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  const Functional pure = vector_state(s, e0);
  CHECK_FALSE(is_faithful(pure));
  CHECK(is_faithful(faithful_state(s)));
  const Functional g(s, oracle::unit(2, 1, 1));
  CHECK(dual_order_unit_radius(pure, g, 1).status == RadiusStatus::none);
  Rng rng(67);
  const EquivalenceReport rep = verify_dual_unit_equivalences(pure, 2, 3, rng);
  CHECK_FALSE(rep.faithful);
  CHECK(rep.undominated.has_value());
  CHECK_FALSE(rep.order_unit());
  CHECK_FALSE(rep.matrix_order_unit());
}

TEST_CASE("faithful states satisfy all unit properties", "[dual-space]") {
  Rng rng(68);
  for (const char* name : {"full:2", "toeplitz:3"}) {
    const Functional delta = faithful_state(share(builtin_system(name)));
    const EquivalenceReport rep = verify_dual_unit_equivalences(delta, 2, 4, rng);
    CHECK(rep.faithful);
    CHECK(rep.passed());
  }
}

TEST_CASE("series state weights", "[dual-space]") {
  const SystemPtr s = full(2);
  ComplexVector e0 = ComplexVector::Zero(2);
  ComplexVector e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  const Functional f = series_state({vector_state(s, e0), vector_state(s, e1)});
  // (1/2, 1/4) renormalized.
  CHECK(f.eval(oracle::unit(2, 0, 0)).real() == Approx(2.0 / 3.0));
  CHECK(f.eval(oracle::unit(2, 1, 1)).real() == Approx(1.0 / 3.0));
  CHECK(is_faithful(f));
  CHECK_THROWS_AS(series_state({}), Error);
}

TEST_CASE("Paulsen systems", "[dual-space]") {
  const PaulsenSystem p0 = paulsen_system({}, 2);
  CHECK(p0.system->dim() == 2);
  CHECK(p0.trace_unit.eval(ComplexMatrix::Identity(4, 4)).real() == Approx(2.0));
  const PaulsenSystem p1 = paulsen_system({oracle::unit(2, 0, 1)}, 2);
  CHECK(p1.system->dim() == 4);
  CHECK(is_faithful(p1.trace_unit));
  CHECK_THROWS_AS(paulsen_system({ComplexMatrix::Identity(3, 3)}, 2), DimensionError);
}

TEST_CASE("restriction and unique extension", "[dual-space]") {
  Rng rng(69);
  const SystemPtr big = full(2);
  const SystemPtr small = share(builtin_system("pauli-span"));
  const Functional f(big, random_gaussian(rng, 2, 2));
  const Functional r = restrict(f, small);
  for (const auto& b : small->basis()) {
    CHECK(std::abs(r.eval(b) - f.eval(b)) < 1e-12);
  }
  CHECK_THROWS_AS(restrict(r, big), MembershipError);
  CHECK_THROWS_AS(extend_unique(r, big), MembershipError);
  // A second basis of the same system spans it.
  const SystemPtr same = share(make_operator_system({oracle::unit(2, 0, 1)}, 2));
  const Functional e = extend_unique(r, same);
  CHECK((e.canonical() - r.canonical()).norm() < 1e-12);
}

TEST_CASE("decision names", "[dual-space]") {
  CHECK(std::string(to_string(Decision::yes)) == "yes");
  CHECK(std::string(to_string(RadiusStatus::none)) == "none");
}
