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

#include "opsys/harness/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>

#include "opsys/dual_space.hpp"
#include "opsys/errors.hpp"
#include "opsys/harness/report.hpp"
#include "opsys/harness/suites.hpp"
#include "opsys/io.hpp"
#include "opsys/order_norms.hpp"

namespace opsys::harness {

namespace {

struct Globals {
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int depth = 4;
  int levels = 0;
  int samples = 0;
  std::string dump_problem;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inline JSON when the argument looks like JSON, a file path otherwise.
Json load_json_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) {
    return parse_json(arg);
  }
  return read_json_file(arg);
}

ComplexMatrix load_matrix(const std::string& arg) {
  Json j = load_json_arg(arg);
  if (j.is_object()) {
    if (!j.contains("matrix")) throw ParseError("expected a matrix or {\"matrix\": ...}");
    j = j["matrix"];
  }
  return matrix_from_json(j);
}

MatrixFunctional load_matrix_functional(const std::string& arg, SystemPtr s) {
  const Json j = load_json_arg(arg);
  if (j.is_object() && j.contains("grid")) {
    const Json& g = j["grid"];
    if (!g.is_array() || g.empty()) throw ParseError("'grid' must be a square array");
    std::vector<std::vector<Functional>> grid(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g[i].is_array() || g[i].size() != g.size()) {
        throw ParseError("'grid' must be a square array");
      }
      for (const auto& e : g[i]) grid[i].push_back(functional_from_json(e, s));
    }
    return MatrixFunctional(std::move(grid));
  }
  return MatrixFunctional::diagonal(1, functional_from_json(j, s));
}

Status status_of(Decision d) {
  if (d == Decision::yes) return Status::pass;
  if (d == Decision::no) return Status::fail;
  return Status::undecided;
}

// ------------------------------------------------------------------ commands

void cmd_norm(const std::string& system, const std::string& element,
              const std::string& kind, RunReport& r) {
  const SystemPtr s = share(load_system(system));
  const ComplexMatrix v = load_matrix(element);
  r.config["system"] = system;
  r.config["kind"] = kind;
  if (v.rows() != s->d() || v.cols() != s->d()) {
    throw DimensionError("element size does not match the system");
  }
  const double residual = s->residual(v);
  r.add("norm.membership", "opsys-model.contains",
        residual <= kMembershipTol ? Status::pass : Status::fail,
        "element lies in the system", {{"residual", residual}});
  if (residual > kMembershipTol) return;

  Json result;
  result["kind"] = kind;
  if (kind == "h") {
    const double h = order_norm_h(*s, v);
    result["value"] = h;
    r.add("norm.h", "order-norms.order_norm_h", Status::pass,
          "order seminorm on Hermitian elements", {{"value", h}});
  } else if (kind == "min") {
    const MinNormResult m = min_order_norm_detail(*s, v);
    result["value"] = m.value;
    result["grid_error"] = m.grid_error;
    r.add("norm.min", "order-norms.min_order_norm", Status::pass,
          "numerical radius", {{"value", m.value}, {"grid_error", m.grid_error}});
  } else if (kind == "max") {
    const MaxNormResult m = max_order_norm(*s, v);
    result["lower"] = m.lower;
    result["upper"] = m.upper;
    r.add("norm.max", "order-norms.max_order_norm", Status::pass,
          "maximal order norm bracket", {{"lower", m.lower}, {"upper", m.upper}});
  } else {
    const NormReport n = norm_report(*s, v);
    if (n.h) result["h"] = *n.h;
    result["min"] = n.min;
    result["min_grid_error"] = n.min_grid_error;
    result["max_lower"] = n.max_lower;
    result["max_upper"] = n.max_upper;
    result["op"] = n.op;
    const bool ok = n.min <= n.op + 1e-6 && n.op <= n.max_upper + 1e-6 &&
                    n.max_upper <= 2.0 * n.min + 1e-6;
    r.add("norm.sandwich", "order-norms.norm_report",
          ok ? Status::pass : Status::fail, "min <= op <= max <= 2 min",
          {{"min", n.min}, {"op", n.op}, {"max_upper", n.max_upper}});
  }
  r.result = std::move(result);
}

void cmd_cone(const std::string& system, const std::string& element,
              const std::string& unit, RunReport& r) {
  const SystemPtr s = share(load_system(system));
  const ComplexMatrix x = load_matrix(element);
  r.config["system"] = system;
  if (x.rows() != x.cols() || x.rows() % s->d() != 0) {
    throw DimensionError("element must be an n d x n d matrix");
  }
  const int n = static_cast<int>(x.rows()) / s->d();
  const LevelElement le(n, s->d(), x);
  r.config["level"] = n;
  const double residual = subspace_residual(*s, le);
  r.add("cone.subspace", "opsys-model.subspace_member",
        residual <= kMembershipTol ? Status::pass : Status::fail,
        "element lies in M_n(S)", {{"residual", residual}});
  const bool hermitian = asymmetry(x) <= kMembershipTol;
  const double lmin = hermitian ? lambda_min(x) : 0.0;
  r.add("cone.positive", "opsys-model.cone_member",
        cone_member(*s, le) ? Status::pass : Status::fail,
        hermitian ? "Hermitian, smallest eigenvalue recorded" : "not Hermitian",
        {{"lambda_min", lmin}});
  if (hermitian && residual <= kMembershipTol) {
    const ComplexMatrix e = unit.empty() ? s->unit() : load_matrix(unit);
    const auto radius = order_unit_radius_level(*s, e, le);
    Json ev = Json::object();
    if (radius) ev["radius"] = *radius;
    r.add("cone.order-unit-radius", "opsys-model.order_unit_radius_level",
          radius ? Status::pass : Status::fail,
          radius ? "dominated by a multiple of the unit" : "not dominated",
          ev);
  }
}

void cmd_check_cp(const Globals& g, const std::string& system,
                  const std::string& functional, RunReport& r) {
  const SystemPtr s = share(load_system(system));
  const MatrixFunctional mf = load_matrix_functional(functional, s);
  r.config["system"] = system;
  r.config["level"] = mf.n();
  if (!g.dump_problem.empty()) {
    std::ofstream f(g.dump_problem);
    if (!f) throw ParseError("cannot write '" + g.dump_problem + "'");
    f << problem_to_json(choi_problem(mf, g.tol)).dump(2) << '\n';
  }
  CpOptions opts;
  opts.tol = g.tol;
  const CpVerdict v = is_cp(mf, opts);
  Json ev = {{"route", v.route}};
  if (v.route == "choi-eigenvalue") ev["choi_lambda_min"] = v.choi_lambda_min;
  if (v.route == "dykstra") {
    ev["gap"] = v.solver.gap;
    ev["iterations"] = v.solver.iterations;
  }
  r.add("dual.is_cp", "dual-space.is_cp", status_of(v.decision),
        std::string("completely positive: ") + to_string(v.decision), ev);
}

void cmd_tower_build(const Globals& g, const std::string& spec,
                     const std::string& file, const std::string& out_path,
                     Rng& rng, RunReport& r) {
  if (spec.empty() == file.empty()) {
    throw UsageError("tower build needs exactly one of --spec and --file");
  }
  r.config[spec.empty() ? "file" : "spec"] = spec.empty() ? file : spec;
  std::optional<Tower> t;
  try {
    if (!spec.empty()) {
      t.emplace(make_tower(spec, rng));
    } else {
      t.emplace(tower_from_json(read_json_file(file), rng));
    }
  } catch (const ValidationError& e) {
    r.add("tower.validate", "limit-towers.validate_embedding", Status::fail,
          e.what(), {{"check", e.check()}});
    return;
  }
  Json dims = Json::array();
  for (int k = 0; k < t->depth(); ++k) dims.push_back(t->system(k)->d());
  r.add("tower.validate", "limit-towers.validate_embedding", Status::pass,
        "unital complete order embeddings at every stage",
        {{"depth", t->depth()}, {"dims", dims}});
  Json result = {{"name", t->name()}, {"depth", t->depth()}, {"dims", dims}};
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot write '" + out_path + "'");
    f << tower_to_json(*t).dump() << '\n';
    result["written"] = out_path;
  } else if (g.json) {
    result["tower"] = tower_to_json(*t);
  }
  r.result = std::move(result);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Globals g;
  if (const char* env = std::getenv("OPSYS_TOL")) {
    char* end = nullptr;
    g.tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(g.tol > 0.0)) {
      err << "error: OPSYS_TOL must be a positive number\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Operator system verification toolkit", "opsys"};
  app.require_subcommand(1);
  app.add_flag("--json", g.json, "Emit the report as JSON");
  app.add_flag("--timing", g.timing, "Include elapsed_ms in the report");
  app.add_option("--seed", g.seed, "Seed of the global generator");
  app.add_option("--tol", g.tol, "Decision tolerance (default OPSYS_TOL or 1e-7)")
      ->check(CLI::PositiveNumber);
  app.add_option("--depth", g.depth, "Tower depth")->check(CLI::Range(1, 6));
  app.add_option("--levels", g.levels, "Matrix levels")->check(CLI::Range(1, 8));
  app.add_option("--samples", g.samples, "Samples per check")->check(CLI::Range(1, 100000));
  app.add_option("--dump-problem", g.dump_problem, "Write the feasibility problem as JSON");

  std::function<void(Rng&, RunReport&)> action;
  std::string command;

  std::string system, element, kind = "all", unit;
  auto* norm = app.add_subcommand("norm", "Order norms of an element");
  norm->add_option("--system", system, "Builtin name or system JSON file")->required();
  norm->add_option("--element", element, "Matrix JSON (file or inline)")->required();
  norm->add_option("--kind", kind, "h, min, max or all")
      ->check(CLI::IsMember({"h", "min", "max", "all"}));
  norm->callback([&] {
    command = "norm";
    action = [&](Rng&, RunReport& r) { cmd_norm(system, element, kind, r); };
  });

  auto* cone = app.add_subcommand("cone", "Cone membership at matrix level n");
  cone->add_option("--system", system, "Builtin name or system JSON file")->required();
  cone->add_option("--element", element, "Flattened n d x n d matrix")->required();
  cone->add_option("--unit", unit, "Order unit (default I)");
  cone->callback([&] {
    command = "cone";
    action = [&](Rng&, RunReport& r) { cmd_cone(system, element, unit, r); };
  });

  std::string functional;
  auto* dual = app.add_subcommand("dual", "Matrix-ordered dual checks");
  dual->require_subcommand(1);
  auto* check_cp = dual->add_subcommand("check-cp", "Complete positivity of [f_ij]");
  check_cp->add_option("--system", system, "Builtin name or system JSON file")->required();
  check_cp->add_option("--functional", functional,
                       "{\"riesz\": M} or {\"grid\": [[...]]} (file or inline)")
      ->required();
  check_cp->callback([&] {
    command = "dual check-cp";
    action = [&](Rng&, RunReport& r) { cmd_check_cp(g, system, functional, r); };
  });
  std::string ce_system = "full:2";
  auto* choi = dual->add_subcommand("choi-effros", "Trace state as a dual matrix order unit");
  choi->add_option("--system", ce_system, "Builtin name or system JSON file");
  choi->callback([&] {
    command = "dual choi-effros";
    action = [&](Rng& rng, RunReport& r) {
      const int levels = g.levels > 0 ? g.levels : 3;
      const int samples = g.samples > 0 ? g.samples : 4;
      r.config["system"] = ce_system;
      r.config["levels"] = levels;
      r.config["samples"] = samples;
      choi_effros_checks(share(load_system(ce_system)), "choi-effros", samples,
                         levels, g.tol, rng, r);
    };
  });

  std::string spec, file, out_path;
  auto* tower = app.add_subcommand("tower", "Inductive towers and their duals");
  tower->require_subcommand(1);
  auto* build = tower->add_subcommand("build", "Build and validate a tower");
  build->add_option("--spec", spec, "matrix-doubling:K or corner:K");
  build->add_option("--file", file, "Tower JSON file");
  build->add_option("--out", out_path, "Write the tower JSON here");
  build->callback([&] {
    command = "tower build";
    action = [&](Rng& rng, RunReport& r) {
      cmd_tower_build(g, spec, file, out_path, rng, r);
    };
  });
  auto* verify = tower->add_subcommand("verify-duality", "Pairing, dual cones and Gamma");
  verify->add_option("--spec", spec, "Tower spec (default matrix-doubling:<depth>)");
  verify->callback([&] {
    command = "tower verify-duality";
    action = [&](Rng& rng, RunReport& r) {
      const std::string sp =
          spec.empty() ? "matrix-doubling:" + std::to_string(g.depth) : spec;
      const int levels = g.levels > 0 ? g.levels : 2;
      const int samples = g.samples > 0 ? g.samples : 50;
      r.config["spec"] = sp;
      r.config["levels"] = levels;
      r.config["samples"] = samples;
      const Tower t = make_tower(sp, rng);
      duality_checks(t, samples, levels, rng, r);
    };
  });

  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "Run a verification suite");
  suite->add_option("name", suite_name, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  suite->callback([&] {
    command = "suite " + suite_name;
    action = [&](Rng& rng, RunReport& r) {
      SuiteParams p;
      p.tol = g.tol;
      p.depth = g.depth;
      p.levels = g.levels;
      p.samples = g.samples;
      run_suite(suite_name, p, rng, r);
    };
  });

  for (auto* sub : {norm, cone, dual, check_cp, choi, tower, build, verify, suite}) {
    sub->fallthrough();
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  RunReport report;
  report.command = command;
  report.seed = g.seed;
  report.config["tol"] = g.tol;
  Rng rng(g.seed);
  const auto start = std::chrono::steady_clock::now();
  try {
    action(rng, report);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  if (g.timing) {
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  }
  if (g.json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << report.to_text();
  }
  return exit_code(report.checks);
}

}  // namespace opsys::harness
