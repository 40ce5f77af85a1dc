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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opsys/linalg.hpp"

namespace opsys {

// tr(a W) = b for the unknown Hermitian W.
struct Constraint {
  HermitianMatrix a;
  double b = 0.0;
};

struct FeasibilityProblem {
  int dim = 0;
  std::vector<Constraint> constraints;
  double tol = 1e-7;
  int max_iter = 20000;
  // Initial point for the iteration; projected onto the affine set first.
  std::optional<HermitianMatrix> start;
};

enum class FeasibilityStatus { feasible, infeasible, undecided };
const char* to_string(FeasibilityStatus s);

struct FeasibilityVerdict {
  FeasibilityStatus status = FeasibilityStatus::undecided;
  std::optional<HermitianMatrix> witness;
  double gap = 0.0;
  int iterations = 0;
  // Largest |tr(A_k W) - b_k| at the returned witness.
  double constraint_residual = 0.0;
};

// Orthonormalized constraint system. Constraints touching disjoint sets of
// matrix entries are kept in separate groups, so projecting is linear in the
// total support rather than quadratic in the matrix size.
class AffineProjector {
 public:
  // Throws DimensionError for malformed problems and InfeasibleAffineError
  // when dependent constraints disagree by more than problem.tol.
  explicit AffineProjector(const FeasibilityProblem& problem);

  RealVector project(const RealVector& w) const;  // hvec coordinates
  ComplexMatrix project(const ComplexMatrix& w) const;
  int rank() const { return rank_; }
  int dropped() const { return dropped_; }

 private:
  struct Group {
    std::vector<int> vars;
    RealMatrix q;  // rank x vars.size(), orthonormal rows
    RealVector c;  // right-hand sides in the orthonormal frame
  };
  int dim_;
  int rank_ = 0;
  int dropped_ = 0;
  std::vector<Group> groups_;
};

// Frobenius-nearest matrix satisfying every constraint.
HermitianMatrix project_affine(const FeasibilityProblem& problem,
                               const HermitianMatrix& w);

// Dykstra alternating projections between the PSD cone and the affine set.
// Infeasibility of the affine part alone yields an infeasible verdict.
FeasibilityVerdict dykstra_solve(const FeasibilityProblem& problem);

// Largest |tr(A_k W) - b_k|.
double constraint_residual(const FeasibilityProblem& problem,
                           const ComplexMatrix& w);

// Constraints fixing every entry of `target`.
FeasibilityProblem pinning_problem(const ComplexMatrix& target,
                                   double tol = 1e-7, int max_iter = 20000);

}  // namespace opsys
