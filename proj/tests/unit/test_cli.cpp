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
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "opsys/harness/cli.hpp"
#include "opsys/harness/report.hpp"
#include "opsys/io.hpp"

using namespace opsys;
using namespace opsys::harness;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

const char* kE12 = "[[[0,0],[1,0]],[[0,0],[0,0]]]";

}  // namespace

TEST_CASE("usage errors exit with 64", "[cli]") {
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"bogus"}).code == kExitUsage);
  CHECK(invoke({"norm", "--system", "full:2"}).code == kExitUsage);
  CHECK(invoke({"norm", "--system", "full:2", "--element", kE12, "--kind", "huge"}).code ==
        kExitUsage);
  CHECK(invoke({"suite", "no-such-suite"}).code == kExitUsage);
  CHECK(invoke({"tower"}).code == kExitUsage);
  CHECK(invoke({"--tol", "-1", "suite", "mou-unit"}).code == kExitUsage);
  const Outcome o = invoke({"bogus"});
  CHECK(o.err.find("Usage") != std::string::npos);
}

TEST_CASE("malformed input exits with 65", "[cli]") {
  CHECK(invoke({"norm", "--system", "full:2", "--element", "/nonexistent.json"}).code ==
        kExitInput);
  CHECK(invoke({"norm", "--system", "full:2", "--element", "[[1, 2"}).code == kExitInput);
  CHECK(invoke({"norm", "--system", "nope:2", "--element", kE12}).code == kExitInput);
  CHECK(invoke({"tower", "build", "--spec", "corner:99"}).code == kExitInput);
  const Outcome o = invoke({"norm", "--system", "full:3", "--element", kE12});
  CHECK(o.code == kExitInput);
  CHECK_FALSE(o.err.empty());
}

TEST_CASE("min norm of E_12 in the span of I, X, Y", "[cli]") {
  const Outcome o = invoke(
      {"--json", "norm", "--system", "pauli-span", "--element", kE12, "--kind", "min"});
  REQUIRE(o.code == kExitOk);
  const Json j = parse_json(o.out);
  CHECK(j["schema"] == "opsys-report/1");
  CHECK(j["command"] == "norm");
  CHECK(j["result"]["value"].get<double>() == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("non-members fail the membership check", "[cli]") {
  const Outcome o = invoke({"--json", "norm", "--system", "pauli-span", "--element",
                            "[[1, 0], [0, -1]]"});
  CHECK(o.code == kExitFail);
}

TEST_CASE("reports are deterministic and sorted", "[cli]") {
  const std::vector<std::string> args = {"--json", "--seed", "7", "suite", "mou-unit"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Json j = parse_json(a.out);
  CHECK_FALSE(j.contains("elapsed_ms"));
  const Json& checks = j["checks"];
  REQUIRE(checks.size() >= 2);
  for (std::size_t i = 0; i + 1 < checks.size(); ++i) {
    CHECK(checks[i]["name"].get<std::string>() <= checks[i + 1]["name"].get<std::string>());
  }
  for (const auto& c : checks) CHECK_FALSE(c["operation"].get<std::string>().empty());
  const Json timed = parse_json(invoke({"--json", "--timing", "suite", "mou-unit"}).out);
  CHECK(timed.contains("elapsed_ms"));
  // A different seed changes the sampled evidence.
  CHECK(invoke({"--json", "--seed", "8", "suite", "mou-unit"}).out != a.out);
}

TEST_CASE("choi-effros suite", "[cli]") {
  const Outcome o = invoke({"suite", "choi-effros", "--seed", "7", "--json"});
  REQUIRE(o.code == kExitOk);
  const Json j = parse_json(o.out);
  int passed = 0;
  for (const auto& c : j["checks"]) passed += c["status"] == "pass";
  CHECK(passed >= 20);
}

TEST_CASE("exit code contract over synthetic check lists", "[cli][property]") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Check> checks;
    const int n = static_cast<int>(rng() % 6);
    int fails = 0;
    int undecided = 0;
    for (int i = 0; i < n; ++i) {
      Check c;
      c.name = "c" + std::to_string(i);
      c.status = static_cast<Status>(rng() % 3);
      fails += c.status == Status::fail;
      undecided += c.status == Status::undecided;
      checks.push_back(c);
    }
    const int expect = fails > 0 ? 2 : (undecided > 0 ? 3 : 0);
    CHECK(exit_code(checks) == expect);
  }
}

TEST_CASE("report JSON layout", "[cli]") {
  RunReport r;
  r.command = "demo";
  r.seed = 3;
  r.add("z.last", "mod.op", Status::pass, "ok");
  r.add("a.first", "mod.op", Status::undecided, "maybe", {{"x", 1.5}});
  const Json j = r.to_json();
  CHECK(j["schema"] == kSchema);
  CHECK(j["checks"][0]["name"] == "a.first");
  CHECK(j["checks"][0]["status"] == "undecided");
  CHECK(j["checks"][0]["evidence"]["x"] == 1.5);
  CHECK(j["checks"][1]["name"] == "z.last");
  CHECK_FALSE(j.contains("elapsed_ms"));
  r.elapsed_ms = 12;
  CHECK(r.to_json()["elapsed_ms"] == 12);
  CHECK(r.count(Status::pass) == 1);
  CHECK(r.to_text().find("a.first") != std::string::npos);
}

TEST_CASE("tolerance comes from OPSYS_TOL unless given", "[cli]") {
  ::setenv("OPSYS_TOL", "1e-5", 1);
  const Json env = parse_json(invoke({"--json", "suite", "mou-unit"}).out);
  CHECK(env["config"]["tol"].get<double>() == 1e-5);
  const Json flag = parse_json(invoke({"--json", "--tol", "1e-4", "suite", "mou-unit"}).out);
  CHECK(flag["config"]["tol"].get<double>() == 1e-4);
  ::setenv("OPSYS_TOL", "abc", 1);
  CHECK(invoke({"suite", "mou-unit"}).code == kExitUsage);
  ::unsetenv("OPSYS_TOL");
  const Json def = parse_json(invoke({"--json", "suite", "mou-unit"}).out);
  CHECK(def["config"]["tol"].get<double>() == 1e-7);
}

TEST_CASE("check-cp on the transpose map and the problem dump", "[cli]") {
  // f_ij(x) = x_ji on M_2 has Riesz matrices E_ij.
  const std::string grid =
      R"({"grid": [[{"riesz": [[1,0],[0,0]]}, {"riesz": [[0,1],[0,0]]}],)"
      R"( [{"riesz": [[0,0],[1,0]]}, {"riesz": [[0,0],[0,1]]}]]})";
  const std::string path = "opsys_cli_test_problem.json";
  const Outcome o = invoke({"--json", "--dump-problem", path, "dual", "check-cp",
                            "--system", "full:2", "--functional", grid});
  CHECK(o.code == kExitFail);
  const FeasibilityProblem p = problem_from_json(read_json_file(path));
  CHECK(p.dim == 4);
  CHECK(dykstra_solve(p).status == FeasibilityStatus::infeasible);
  std::remove(path.c_str());
  // The identity map passes.
  const std::string id =
      R"({"grid": [[{"riesz": [[1,0],[0,0]]}, {"riesz": [[0,0],[1,0]]}],)"
      R"( [{"riesz": [[0,1],[0,0]]}, {"riesz": [[0,0],[0,1]]}]]})";
  CHECK(invoke({"dual", "check-cp", "--system", "full:2", "--functional", id}).code ==
        kExitOk);
}

TEST_CASE("tower commands", "[cli]") {
  const std::string path = "opsys_cli_test_tower.json";
  CHECK(invoke({"tower", "build", "--spec", "corner:3", "--out", path}).code == kExitOk);
  CHECK(invoke({"tower", "build", "--file", path}).code == kExitOk);
  std::remove(path.c_str());
  CHECK(invoke({"--depth", "2", "--samples", "5", "tower", "verify-duality"}).code ==
        kExitOk);
}
