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

#include "opsys/feasibility.hpp"

#include <cmath>
#include <deque>
#include <numeric>

#include "opsys/errors.hpp"

namespace opsys {

const char* to_string(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::feasible:
      return "feasible";
    case FeasibilityStatus::infeasible:
      return "infeasible";
    case FeasibilityStatus::undecided:
      return "undecided";
  }
  return "undecided";
}

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

AffineProjector::AffineProjector(const FeasibilityProblem& problem)
    : dim_(problem.dim) {
  if (problem.dim <= 0) throw DimensionError("feasibility: dim must be positive");
  if (problem.constraints.empty()) {
    throw DimensionError("feasibility: constraint list is empty");
  }
  const int nvars = dim_ * dim_;
  std::vector<RealVector> rows;
  std::vector<std::vector<int>> supports;
  for (const auto& c : problem.constraints) {
    if (c.a.dim() != dim_) {
      throw DimensionError("feasibility: constraint matrix has wrong size");
    }
    rows.push_back(hvec(c.a.matrix()));
    std::vector<int> sup;
    for (int i = 0; i < nvars; ++i)
      if (rows.back()(i) != 0.0) sup.push_back(i);
    supports.push_back(std::move(sup));
  }

  // Union-find over matrix coordinates shared between constraints.
  std::vector<int> parent(nvars);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& sup : supports) {
    for (std::size_t t = 1; t < sup.size(); ++t) {
      const int a = find_root(parent, sup[0]);
      const int b = find_root(parent, sup[t]);
      if (a != b) parent[b] = a;
    }
  }
  std::vector<int> group_of_root(nvars, -1);
  std::vector<std::vector<int>> members;  // constraint indices per group
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (supports[k].empty()) {
      if (std::abs(problem.constraints[k].b) > problem.tol) {
        throw InfeasibleAffineError(
            "feasibility: zero constraint with nonzero right-hand side",
            std::abs(problem.constraints[k].b));
      }
      ++dropped_;
      continue;
    }
    const int root = find_root(parent, supports[k][0]);
    if (group_of_root[root] < 0) {
      group_of_root[root] = static_cast<int>(members.size());
      members.emplace_back();
      groups_.emplace_back();
    }
    members[group_of_root[root]].push_back(static_cast<int>(k));
  }
  for (int v = 0; v < nvars; ++v) {
    const int g = group_of_root[find_root(parent, v)];
    if (g >= 0) groups_[g].vars.push_back(v);
  }

  for (std::size_t g = 0; g < groups_.size(); ++g) {
    Group& grp = groups_[g];
    const int nv = static_cast<int>(grp.vars.size());
    std::vector<RealVector> qs;
    std::vector<double> cs;
    for (int k : members[g]) {
      RealVector a(nv);
      for (int t = 0; t < nv; ++t) a(t) = rows[k](grp.vars[t]);
      double b = problem.constraints[k].b;
      const double scale = a.norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < qs.size(); ++i) {
          const double proj = qs[i].dot(a);
          a -= proj * qs[i];
          b -= proj * cs[i];
        }
      }
      const double na = a.norm();
      if (na <= 1e-9 * scale) {
        if (std::abs(b) / scale > problem.tol) {
          throw InfeasibleAffineError(
              "feasibility: dependent constraints are inconsistent",
              std::abs(b) / scale);
        }
        ++dropped_;
        continue;
      }
      qs.push_back(a / na);
      cs.push_back(b / na);
    }
    grp.q.resize(static_cast<Eigen::Index>(qs.size()), nv);
    grp.c.resize(static_cast<Eigen::Index>(qs.size()));
    for (std::size_t i = 0; i < qs.size(); ++i) {
      grp.q.row(i) = qs[i].transpose();
      grp.c(i) = cs[i];
    }
    rank_ += static_cast<int>(qs.size());
  }
}

RealVector AffineProjector::project(const RealVector& w) const {
  RealVector out = w;
  for (const auto& grp : groups_) {
    const int nv = static_cast<int>(grp.vars.size());
    RealVector local(nv);
    for (int t = 0; t < nv; ++t) local(t) = w(grp.vars[t]);
    local -= grp.q.transpose() * (grp.q * local - grp.c);
    for (int t = 0; t < nv; ++t) out(grp.vars[t]) = local(t);
  }
  return out;
}

ComplexMatrix AffineProjector::project(const ComplexMatrix& w) const {
  return hunvec(project(hvec(w)), dim_);
}

HermitianMatrix project_affine(const FeasibilityProblem& problem,
                               const HermitianMatrix& w) {
  if (w.dim() != problem.dim) {
    throw DimensionError("project_affine: matrix has wrong size");
  }
  AffineProjector proj(problem);
  return HermitianMatrix(proj.project(w.matrix()));
}

double constraint_residual(const FeasibilityProblem& problem,
                           const ComplexMatrix& w) {
  double worst = 0.0;
  for (const auto& c : problem.constraints) {
    const double v = (c.a.matrix() * w).trace().real();
    worst = std::max(worst, std::abs(v - c.b));
  }
  return worst;
}

FeasibilityVerdict dykstra_solve(const FeasibilityProblem& problem) {
  FeasibilityVerdict out;
  std::optional<AffineProjector> proj;
  try {
    proj.emplace(problem);
  } catch (const InfeasibleAffineError& e) {
    out.status = FeasibilityStatus::infeasible;
    out.gap = e.residual();
    return out;
  }
  const int n = problem.dim;
  const int window = 50;
  if (problem.start && problem.start->dim() != n) {
    throw DimensionError("dykstra_solve: start point has the wrong size");
  }
  RealVector x = proj->project(problem.start ? hvec(problem.start->matrix())
                                             : RealVector(RealVector::Zero(n * n)));
  RealVector p = RealVector::Zero(n * n);
  RealVector q = RealVector::Zero(n * n);
  std::deque<double> history;
  for (int it = 1; it <= problem.max_iter; ++it) {
    const RealVector y = hvec(project_psd(hunvec(x + p, n)));
    p = x + p - y;
    const RealVector x_next = proj->project(RealVector(y + q));
    q = y + q - x_next;
    x = x_next;
    const double gap = (x - y).norm();
    out.gap = gap;
    out.iterations = it;
    if (gap < problem.tol) {
      out.status = FeasibilityStatus::feasible;
      const ComplexMatrix w = hunvec(x, n);
      out.witness = HermitianMatrix(w);
      out.constraint_residual = constraint_residual(problem, w);
      return out;
    }
    history.push_back(gap);
    if (static_cast<int>(history.size()) > window) {
      const double old = history.front();
      history.pop_front();
      const double rel = std::abs(gap - old) / gap;
      if (rel < problem.tol / 10.0 && gap > 10.0 * problem.tol) {
        out.status = FeasibilityStatus::infeasible;
        return out;
      }
    }
  }
  out.status = FeasibilityStatus::undecided;
  return out;
}

FeasibilityProblem pinning_problem(const ComplexMatrix& target, double tol,
                                   int max_iter) {
  const int d = static_cast<int>(target.rows());
  FeasibilityProblem prob;
  prob.dim = d;
  prob.tol = tol;
  prob.max_iter = max_iter;
  const RealVector t = hvec(hermitian_part(target));
  for (int k = 0; k < d * d; ++k) {
    RealVector e = RealVector::Zero(d * d);
    e(k) = 1.0;
    prob.constraints.push_back({HermitianMatrix(hunvec(e, d)), t(k)});
  }
  return prob;
}

}  // namespace opsys
