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

#include "opsys/random.hpp"
#include "opsys/section.hpp"
#include "oracles.hpp"

using namespace opsys;
using Catch::Approx;

namespace {

void check_certificate(const OperatorSystem& s, const ComplexMatrix& c,
                       const SectionResult& r) {
  const ComplexMatrix diff = r.certificate - (c + c.adjoint()) / 2.0;
  for (const auto& b : s.basis()) {
    CHECK(std::abs((b * diff).trace()) < 1e-8 * std::max(1.0, c.norm()));
  }
  CHECK(oracle::lambda_min(r.certificate) == Approx(r.lower).margin(1e-8));
}

}  // namespace

TEST_CASE("full algebra: minimum is the least eigenvalue", "[section]") {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = uniform_int(rng, 2, 5);
    const OperatorSystem s = builtin_system("full:" + std::to_string(d));
    const ComplexMatrix c = oracle::hermitian(rng, d);
    const SectionResult r = section_minimize(s, c);
    CHECK(r.exact);
    CHECK(r.lower == Approx(oracle::lambda_min(c)).margin(1e-10));
    CHECK(r.upper == Approx(r.lower).margin(1e-12));
    CHECK((r.minimizer * c).trace().real() == Approx(r.lower).margin(1e-10));
    check_certificate(s, c, r);
  }
}

TEST_CASE("diagonal algebra: minimum is the least diagonal entry", "[section]") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = uniform_int(rng, 2, 6);
    const OperatorSystem s = builtin_system("diag:" + std::to_string(d));
    const ComplexMatrix c = oracle::hermitian(rng, d);
    double expect = c(0, 0).real();
    for (int i = 1; i < d; ++i) expect = std::min(expect, c(i, i).real());
    const SectionResult r = section_minimize(s, c);
    CHECK(r.lower <= expect + 1e-12);
    CHECK(r.upper >= expect - 1e-12);
    CHECK(r.upper - r.lower <= 1e-9);
    check_certificate(s, c, r);
  }
}

TEST_CASE("span of I, X, Y: minimum over the Bloch disc", "[section]") {
  Rng rng(53);
  const OperatorSystem s = builtin_system("pauli-span");
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix c = oracle::hermitian(rng, 2);
    const double cx = (c * oracle::pauli_x()).trace().real();
    const double cy = (c * oracle::pauli_y()).trace().real();
    const double expect = c.trace().real() / 2.0 - std::hypot(cx, cy) / 2.0;
    const SectionResult r = section_minimize(s, c);
    CHECK(r.lower <= expect + 1e-12);
    CHECK(r.upper >= expect - 1e-12);
    CHECK(r.upper - r.lower <= 1e-9);
    check_certificate(s, c, r);
  }
}

TEST_CASE("scalar system", "[section]") {
  const OperatorSystem s = make_operator_system({}, 3);
  REQUIRE(s.dim() == 1);
  Rng rng(54);
  const ComplexMatrix c = oracle::hermitian(rng, 3);
  const SectionResult r = section_minimize(s, c);
  CHECK(r.exact);
  CHECK(r.lower == Approx(c.trace().real() / 3.0));
  check_certificate(s, c, r);
}

TEST_CASE("bounds bracket sampled states of random systems", "[section][property]") {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = uniform_int(rng, 2, 5);
    const OperatorSystem s = random_system(rng, d, uniform_int(rng, 1, 3));
    const ComplexMatrix c = oracle::hermitian(rng, d);
    const SectionResult r = section_minimize(s, c);
    REQUIRE(r.lower <= r.upper + 1e-12);
    CHECK(r.upper - r.lower <= 1e-8);
    // The minimizer is a state of S.
    CHECK(s.residual(r.minimizer) < 1e-9);
    CHECK(std::abs(r.minimizer.trace() - Complex(1.0)) < 1e-9);
    CHECK(oracle::lambda_min(r.minimizer) >= -1e-12);
    CHECK((r.minimizer * c).trace().real() == Approx(r.upper).margin(1e-9));
    // Positive elements of S normalized to trace one can only do worse.
    for (int k = 0; k < 20; ++k) {
      ComplexMatrix p = random_level_positive(s, 1, rng, 1e-6).flat();
      p /= p.trace().real();
      CHECK((p * c).trace().real() >= r.lower - 1e-10);
    }
    check_certificate(s, c, r);
  }
}

TEST_CASE("threshold stops once the sign is certified", "[section]") {
  Rng rng(56);
  const OperatorSystem s = random_system(rng, 4, 2);
  const ComplexMatrix c = oracle::hermitian(rng, 4);
  const SectionResult full = section_minimize(s, c);
  SectionOptions opts;
  opts.threshold = full.lower - 0.5;
  const SectionResult quick = section_minimize(s, c, opts);
  CHECK(quick.lower >= *opts.threshold);
  CHECK(quick.newton_steps <= full.newton_steps);
  opts.threshold = full.upper + 0.5;
  const SectionResult below = section_minimize(s, c, opts);
  CHECK(below.upper < *opts.threshold);
}
