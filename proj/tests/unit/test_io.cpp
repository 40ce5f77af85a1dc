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

#include <cstdio>
#include <fstream>

#include "opsys/errors.hpp"
#include "opsys/io.hpp"
#include "oracles.hpp"

using namespace opsys;

TEST_CASE("identity matrix encoding", "[io]") {
  const Json j = matrix_to_json(ComplexMatrix::Identity(2, 2));
  CHECK(j.dump() == "[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]");
  const ComplexMatrix back = matrix_from_json(parse_json("[[[1,0],[0,0]],[[0,0],[1,0]]]"));
  CHECK((back - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
  // Plain numbers are real entries.
  const ComplexMatrix real = matrix_from_json(parse_json("[[0, 1], [1, 0]]"));
  CHECK((real - oracle::pauli_x()).norm() == 0.0);
}

TEST_CASE("matrix roundtrip is exact", "[io][property]") {
  Rng rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_gaussian(rng, uniform_int(rng, 1, 4), uniform_int(rng, 1, 4));
    const Json j = parse_json(matrix_to_json(m).dump());
    CHECK((matrix_from_json(j) - m).norm() == 0.0);
  }
}

TEST_CASE("malformed input", "[io]") {
  CHECK_THROWS_AS(parse_json("[[1, 2"), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[[1, 2], [3]]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[[[1, 2, 3]]]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json("[[\"a\"]]")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(parse_json("{\"a\": 1}")), ParseError);
  CHECK_THROWS_AS(system_from_json(parse_json("{\"d\": 2}")), ParseError);
  CHECK_THROWS_AS(system_from_json(parse_json("\"full:x\"")), ParseError);
  CHECK_THROWS_AS(problem_from_json(parse_json("{\"dim\": 2}")), ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/opsys.json"), ParseError);
  CHECK_THROWS_AS(load_system("/nonexistent/system.json"), ParseError);
}

TEST_CASE("system roundtrip", "[io]") {
  Rng rng(92);
  for (const OperatorSystem& s :
       {builtin_system("pauli-span"), builtin_system("toeplitz:3"), random_system(rng, 3, 2)}) {
    const OperatorSystem back = system_from_json(parse_json(system_to_json(s).dump()));
    REQUIRE(back.d() == s.d());
    REQUIRE(back.dim() == s.dim());
    for (const auto& b : s.basis()) CHECK(back.residual(b) < 1e-12);
  }
  CHECK(system_from_json(Json("full:3")).dim() == 9);
}

TEST_CASE("functional roundtrip", "[io]") {
  Rng rng(93);
  const SystemPtr s = share(builtin_system("pauli-span"));
  const Functional f(s, random_gaussian(rng, 2, 2));
  const Functional back = functional_from_json(parse_json(functional_to_json(f).dump()), s);
  CHECK((back.canonical() - f.canonical()).norm() < 1e-15);
  CHECK_THROWS_AS(functional_from_json(parse_json("{}"), s), ParseError);
}

TEST_CASE("feasibility problem roundtrip", "[io]") {
  Rng rng(94);
  FeasibilityProblem p;
  p.dim = 3;
  p.tol = 1e-6;
  p.max_iter = 123;
  for (int k = 0; k < 4; ++k) {
    p.constraints.push_back({HermitianMatrix(oracle::hermitian(rng, 3)), gaussian(rng)});
  }
  const FeasibilityProblem back = problem_from_json(parse_json(problem_to_json(p).dump()));
  CHECK(back.dim == 3);
  CHECK(back.tol == p.tol);
  CHECK(back.max_iter == 123);
  REQUIRE(back.constraints.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK((back.constraints[k].a.matrix() - p.constraints[k].a.matrix()).norm() == 0.0);
    CHECK(back.constraints[k].b == p.constraints[k].b);
  }
}

TEST_CASE("tower roundtrip", "[io]") {
  Rng rng(95);
  for (const char* spec : {"matrix-doubling:3", "corner:3"}) {
    const Tower t = make_tower(spec, rng);
    const Json j = parse_json(tower_to_json(t).dump());
    REQUIRE(j.contains("systems"));
    REQUIRE(j.contains("embeddings"));
    const Tower back = tower_from_json(j, rng);
    REQUIRE(back.depth() == t.depth());
    for (int k = 0; k + 1 < t.depth(); ++k) {
      for (const auto& b : t.system(k)->basis()) {
        CHECK((back.map(k).apply(b) - t.map(k).apply(b)).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("tower JSON validation errors", "[io]") {
  Rng rng(96);
  // x -> x (+) 0 is not unital.
  const Json bad = parse_json(R"({
    "systems": [{"d": 1, "generators": []}, "full:2"],
    "embeddings": [{"matrix_on_basis": [[[1, 0], [0, 0]]]}]
  })");
  try {
    tower_from_json(bad, rng);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.check() == "unital");
  }
  CHECK_THROWS_AS(tower_from_json(parse_json(R"({"systems": ["full:2"]})"), rng), ParseError);
}

TEST_CASE("system files", "[io]") {
  const std::string path = "opsys_io_test_system.json";
  {
    std::ofstream f(path);
    f << system_to_json(builtin_system("pauli-span")).dump();
  }
  CHECK(load_system(path).dim() == 3);
  CHECK(load_system("diag:3").dim() == 3);
  std::remove(path.c_str());
}
