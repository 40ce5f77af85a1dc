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

#include "opsys/harness/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

#include "opsys/dual_space.hpp"
#include "opsys/feasibility.hpp"
#include "opsys/order_norms.hpp"
#include "opsys/tower.hpp"

namespace opsys::harness {

namespace {

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Status from_bool(bool ok) { return ok ? Status::pass : Status::fail; }

Status from_decision(Decision d) {
  switch (d) {
    case Decision::yes:
      return Status::pass;
    case Decision::no:
      return Status::fail;
    case Decision::undecided:
      return Status::undecided;
  }
  return Status::undecided;
}

int pick(int value, int fallback) { return value > 0 ? value : fallback; }

SystemPtr random_system_ptr(Rng& rng, int max_d) {
  const int d = uniform_int(rng, 2, max_d);
  return share(random_system(rng, d, uniform_int(rng, 1, d)));
}

// ------------------------------------------------------------ norm-sandwich

void norm_sandwich(const SuiteParams& p, Rng& rng, RunReport& r) {
  const int total = pick(p.samples, 100);
  const int systems = std::min(10, total);
  r.config["samples"] = total;
  r.config["systems"] = systems;
  for (int si = 0; si < systems; ++si) {
    const SystemPtr s = random_system_ptr(rng, 5);
    const int count = total / systems + (si < total % systems ? 1 : 0);
    for (int k = 0; k < count; ++k) {
      const ComplexMatrix v = random_element(*s, rng);
      const double mn = min_order_norm(*s, v);
      const double op = op_norm(v);
      const double mx = max_order_norm(*s, v).upper;
      const double slack = std::max({mn - op, op - mx, mx - 2.0 * mn});
      r.add(fmt("norm-sandwich.s%02d.e%02d", si, k), "order-norms.max_order_norm",
            from_bool(slack <= 1e-6),
            fmt("min %.6f <= op %.6f <= max %.6f <= 2 min", mn, op, mx),
            {{"d", s->d()}, {"dim", s->dim()}, {"min", mn}, {"op", op},
             {"max_upper", mx}});
    }
  }
}

// ----------------------------------------------------------------- mou-unit

void mou_unit(const SuiteParams& p, Rng& rng, RunReport& r) {
  const int levels = pick(p.levels, 3);
  const int samples = pick(p.samples, 32);
  r.config["levels"] = levels;
  r.config["samples"] = samples;
  for (int si = 0; si < 10; ++si) {
    const SystemPtr s = random_system_ptr(rng, 4);
    const ComplexMatrix h = random_hermitian_element(*s, rng);
    const ComplexMatrix e = s->unit() + 0.5 * h / hermitian_norm(h);
    const MatrixOrderUnitReport rep =
        is_matrix_order_unit(*s, e, levels, rng, samples);
    Json radii = Json::array();
    bool all = rep.is_unit;
    for (const auto& lvl : rep.levels) {
      radii.push_back(lvl.max_radius);
      all = all && lvl.dominated == static_cast<int>(lvl.radii.size());
    }
    r.add(fmt("mou-unit.s%02d", si), "opsys-model.is_matrix_order_unit",
          from_bool(all),
          fmt("d %d, dim %d, radii found at levels 1..%d", s->d(), s->dim(),
              levels),
          {{"max_radius_per_level", radii}});
  }
  const OperatorSystem diag = builtin_system("diag:2");
  ComplexMatrix e = ComplexMatrix::Zero(2, 2);
  e(0, 0) = 1.0;
  const MatrixOrderUnitReport bad = is_matrix_order_unit(diag, e, 1, rng, samples);
  const bool rejected =
      !bad.is_unit && bad.counterexample && bad.counterexample->n() == 1;
  r.add("mou-unit.counterexample", "opsys-model.is_matrix_order_unit",
        from_bool(rejected), "diag(1,0) is not an order unit of diag:2");
}

// ------------------------------------------------------- feasibility-oracle

void feasibility_oracle(const SuiteParams& p, Rng& rng, RunReport& r) {
  const int samples = pick(p.samples, 100);
  r.config["samples"] = samples;
  auto check = [&](const std::string& name, const ComplexMatrix& target) {
    const double lmin = lambda_min(target);
    const bool expect = lmin >= -p.tol;
    const FeasibilityVerdict v = dykstra_solve(pinning_problem(target, p.tol));
    Status st = Status::undecided;
    if (v.status != FeasibilityStatus::undecided) {
      st = from_bool((v.status == FeasibilityStatus::feasible) == expect);
    }
    r.add(name, "feasibility.dykstra_solve", st,
          fmt("%s, lambda_min %.3e", opsys::to_string(v.status), lmin),
          {{"d", target.rows()}, {"lambda_min", lmin}, {"gap", v.gap},
           {"iterations", v.iterations}});
  };
  for (int k = 0; k < samples; ++k) {
    const int d = uniform_int(rng, 1, 8);
    const ComplexMatrix h = random_hermitian(rng, d);
    double margin = uniform(rng, 1e-3, 0.5);
    if (k % 2) margin = -margin;
    check(fmt("feasibility-oracle.i%03d", k),
          h - (lambda_min(h) - margin) * ComplexMatrix::Identity(d, d));
  }
  for (int d = 2; d <= 8; ++d) {
    check(fmt("feasibility-oracle.boundary.d%d", d), random_density(rng, d, d / 2));
  }
  const SystemPtr m2 = share(builtin_system("full:2"));
  std::vector<std::vector<Functional>> grid(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) grid[i].emplace_back(m2, matrix_unit(2, i, j));
  CpOptions forced;
  forced.tol = p.tol;
  forced.force_solver = true;
  const CpVerdict v = is_cp(MatrixFunctional(grid), forced);
  r.add("feasibility-oracle.transpose", "dual-space.is_cp",
        from_bool(v.decision == Decision::no),
        fmt("transpose map on M_2: %s", opsys::to_string(v.decision)),
        {{"gap", v.solver.gap}, {"iterations", v.solver.iterations}});
}

// -------------------------------------------------------- dual-equivalences

void dual_equivalences(const SuiteParams& p, Rng& rng, RunReport& r) {
  const int levels = pick(p.levels, 2);
  const int samples = pick(p.samples, 8);
  r.config["levels"] = levels;
  r.config["samples"] = samples;
  std::vector<std::pair<std::string, Functional>> cases;
  {
    const SystemPtr m2 = share(builtin_system("full:2"));
    cases.emplace_back("full2", faithful_state(m2));
    const PaulsenSystem ps = paulsen_system({matrix_unit(2, 0, 1)}, 2);
    cases.emplace_back("paulsen", ps.trace_unit);
    const SystemPtr t3 = share(builtin_system("toeplitz:3"));
    cases.emplace_back("toeplitz3", faithful_state(t3));
    cases.emplace_back("random", faithful_state(random_system_ptr(rng, 3)));
  }
  for (const auto& [name, delta] : cases) {
    const EquivalenceReport rep =
        verify_dual_unit_equivalences(delta, levels, samples, rng);
    const std::string base = "dual-equivalences." + name;
    const char* op = "dual-space.verify_dual_unit_equivalences";
    r.add(base + ".order-unit", op, from_bool(rep.order_unit()),
          fmt("faithful %s, level-1 radii %d/%d", rep.faithful ? "yes" : "no",
              rep.levels.empty() ? 0 : rep.levels[0].found,
              rep.levels.empty() ? 0 : rep.levels[0].samples));
    int found = 0;
    int total = 0;
    int undecided = 0;
    for (const auto& l : rep.levels) {
      found += l.found;
      total += l.samples;
      undecided += l.undecided;
    }
    Status mou = from_bool(rep.matrix_order_unit());
    if (mou == Status::fail && undecided > 0 && found + undecided == total) {
      mou = Status::undecided;
    }
    r.add(base + ".matrix-order-unit", op, mou,
          fmt("radii found %d/%d at levels 1..%d", found, total, levels),
          {{"undecided", undecided}});
    r.add(base + ".archimedean", op, from_bool(rep.archimedean()),
          fmt("%d/%d samples satisfied the premise, %d violations",
              rep.archimedean_premise, rep.archimedean_samples,
              rep.archimedean_violations));
  }
  const SystemPtr d2 = share(builtin_system("diag:2"));
  ComplexVector e1 = ComplexVector::Zero(2);
  e1(0) = 1.0;
  const EquivalenceReport bad =
      verify_dual_unit_equivalences(vector_state(d2, e1), 1, 2, rng);
  r.add("dual-equivalences.non-faithful",
        "dual-space.verify_dual_unit_equivalences",
        from_bool(!bad.faithful && bad.undominated && !bad.order_unit()),
        "vector state on diag:2 is not an order unit");
}

}  // namespace

// ------------------------------------------------------------- choi-effros

void choi_effros_checks(SystemPtr s, const std::string& prefix, int functionals,
                        int levels, double tol, Rng& rng, RunReport& report) {
  const Functional delta = faithful_state(s);
  DualRadiusOptions ro;
  ro.cp.tol = tol;
  CpOptions cp;
  cp.tol = tol;
  for (int k = 0; k < functionals; ++k) {
    const Functional g = random_hermitian_functional(s, rng);
    const DualRadius rp = dual_order_unit_radius(delta, g, 1, ro);
    const DualRadius rm = dual_order_unit_radius(delta, -g, 1, ro);
    const std::string base = prefix + fmt(".g%02d", k);
    const bool found =
        rp.status == RadiusStatus::found && rm.status == RadiusStatus::found;
    Status st = from_bool(found);
    if (!found && (rp.status == RadiusStatus::undecided ||
                   rm.status == RadiusStatus::undecided)) {
      st = Status::undecided;
    }
    report.add(base + ".radius", "dual-space.dual_order_unit_radius", st,
               fmt("r(g) %.6f, r(-g) %.6f", rp.r, rm.r),
               {{"r_plus", rp.r}, {"r_minus", rm.r},
                {"evaluations", rp.evaluations + rm.evaluations}});
    if (!found) continue;
    if (s->is_full()) {
      const double expect = s->d() * lambda_max(hermitian_part(g.canonical()));
      report.add(base + ".eigenvalue-oracle", "dual-space.dual_order_unit_radius",
                 from_bool(std::abs(rp.r - expect) <= 1e-5),
                 fmt("r %.8f vs d lambda_max(G) %.8f", rp.r, expect),
                 {{"error", std::abs(rp.r - expect)}});
    }
    const double r = std::max(rp.r, rm.r);
    for (int n = 1; n <= levels; ++n) {
      Status level = Status::pass;
      std::string routes;
      for (const Functional& f : {delta * r - g, delta * r + g}) {
        const CpVerdict v = is_cp(MatrixFunctional::diagonal(n, f), cp);
        routes = v.route;
        const Status cur = from_decision(v.decision);
        if (cur == Status::fail || (cur == Status::undecided && level == Status::pass)) {
          level = cur;
        }
      }
      report.add(base + fmt(".cp-level%d", n), "dual-space.is_cp", level,
                 fmt("r delta +- g at level %d via %s", n, routes.c_str()));
    }
  }
}

// ----------------------------------------------------------- duality-tower

void duality_checks(const Tower& t, int samples, int levels, Rng& rng,
                    RunReport& report) {
  const DualConeReport c = verify_dual_cones(t, samples, rng);
  const char* cones = "limit-towers.verify_dual_cones";
  report.add("duality.constancy", cones, from_bool(c.max_constancy_residual <= 1e-9),
             fmt("max residual %.3e over %d pairs", c.max_constancy_residual,
                 c.constancy_pairs),
             {{"max_residual", c.max_constancy_residual}});
  report.add("duality.positive-pairing", cones,
             from_bool(c.positive_violations == 0),
             fmt("min pairing %.3e over %d pairs", c.min_positive_pairing,
                 c.positive_pairs),
             {{"min_pairing", c.min_positive_pairing},
              {"violations", c.positive_violations}});
  report.add("duality.element-witnesses", cones,
             from_bool(c.element_witnesses == c.nonpositive_elements),
             fmt("%d/%d non-positive elements separated", c.element_witnesses,
                 c.nonpositive_elements));
  report.add("duality.functional-witnesses", cones,
             from_bool(c.functional_witnesses == c.nonpositive_functionals),
             fmt("%d/%d non-positive functionals separated",
                 c.functional_witnesses, c.nonpositive_functionals));
  if (!c.failures.empty()) {
    report.add("duality.cone-failures", cones, Status::fail, c.failures.front(),
               {{"count", c.failures.size()}});
  }

  const GammaReport g = verify_gamma(t, samples, levels, rng);
  const char* gamma = "limit-towers.verify_gamma";
  report.add("duality.gamma.injectivity", gamma,
             from_bool(g.injectivity_failures == 0 &&
                       g.max_reconstruction_residual <= 1e-9),
             fmt("%d failures in %d samples, reconstruction residual %.3e",
                 g.injectivity_failures, g.injectivity_samples,
                 g.max_reconstruction_residual),
             {{"max_reconstruction_residual", g.max_reconstruction_residual}});
  report.add("duality.gamma.order", gamma, from_bool(g.order_disagreements == 0),
             fmt("%d disagreements in %d samples", g.order_disagreements,
                 g.order_samples));
  report.add("duality.gamma.unit", gamma, from_bool(g.unit_failures == 0),
             fmt("%d failures in %d samples", g.unit_failures, g.unit_samples));
  report.add("duality.gamma.complete", gamma,
             from_bool(g.complete_disagreements == 0 &&
                       g.complete_witnesses == g.complete_nonpositive),
             fmt("%d disagreements in %d samples, %d/%d witnesses",
                 g.complete_disagreements, g.complete_samples,
                 g.complete_witnesses, g.complete_nonpositive));
  if (!g.failures.empty()) {
    report.add("duality.gamma.failures", gamma, Status::fail, g.failures.front(),
               {{"count", g.failures.size()}});
  }
}

// ------------------------------------------------------------------- suite

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "norm-sandwich",      "mou-unit",         "choi-effros",
      "duality-tower",      "feasibility-oracle", "dual-equivalences"};
  return names;
}

void run_suite(const std::string& name, const SuiteParams& p, Rng& rng,
               RunReport& r) {
  r.config["suite"] = name;
  r.config["tol"] = p.tol;
  if (name == "norm-sandwich") {
    norm_sandwich(p, rng, r);
  } else if (name == "mou-unit") {
    mou_unit(p, rng, r);
  } else if (name == "choi-effros") {
    const int levels = pick(p.levels, 3);
    const int functionals = pick(p.samples, 4);
    r.config["levels"] = levels;
    r.config["samples"] = functionals;
    for (int si = 0; si < 5; ++si) {
      const int d = uniform_int(rng, 2, 4);
      const SystemPtr s =
          si == 0 ? share(builtin_system("full:" + std::to_string(d)))
                  : random_system_ptr(rng, 4);
      choi_effros_checks(s, fmt("choi-effros.s%02d", si), functionals, levels,
                         p.tol, rng, r);
    }
    const SystemPtr m2 = share(builtin_system("full:2"));
    ComplexVector e1 = ComplexVector::Zero(2);
    e1(0) = 1.0;
    const DualRadius none = dual_order_unit_radius(
        vector_state(m2, e1), Functional(m2, matrix_unit(2, 1, 1)), 1);
    r.add("choi-effros.non-faithful", "dual-space.dual_order_unit_radius",
          from_bool(none.status == RadiusStatus::none),
          fmt("vector state on M_2: %s", opsys::to_string(none.status)));
  } else if (name == "duality-tower") {
    const int levels = pick(p.levels, 2);
    const int samples = pick(p.samples, 50);
    r.config["depth"] = p.depth;
    r.config["levels"] = levels;
    r.config["samples"] = samples;
    const Tower t = make_tower("matrix-doubling:" + std::to_string(p.depth), rng);
    duality_checks(t, samples, levels, rng, r);
  } else if (name == "feasibility-oracle") {
    feasibility_oracle(p, rng, r);
  } else if (name == "dual-equivalences") {
    dual_equivalences(p, rng, r);
  } else {
    throw std::invalid_argument("unknown suite '" + name + "'");
  }
}

}  // namespace opsys::harness
