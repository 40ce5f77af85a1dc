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

#include "opsys/feasibility.hpp"
#include "opsys/operator_system.hpp"
#include "opsys/section.hpp"

namespace opsys {

enum class Decision { yes, no, undecided };
const char* to_string(Decision d);

// Element of S' given by f(x) = tr(F x). The canonical Riesz matrix is the
// projection of F onto S; two functionals are equal iff their canonical
// matrices agree.
class Functional {
 public:
  Functional(SystemPtr s, const ComplexMatrix& riesz);
  // u_i = f(B_i) for the orthonormal basis of S.
  static Functional from_coordinates(SystemPtr s, const ComplexVector& u);
  static Functional zero(SystemPtr s);

  const SystemPtr& system() const { return s_; }
  const ComplexMatrix& riesz() const { return riesz_; }
  const ComplexMatrix& canonical() const { return canonical_; }
  const ComplexVector& coordinates() const { return coords_; }

  // Throws MembershipError unless x is in S.
  Complex eval(const ComplexMatrix& x) const;
  // f*(x) = conj(f(x*)), Riesz matrix F*.
  Functional adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;

  Functional operator+(const Functional& o) const;
  Functional operator-(const Functional& o) const;
  Functional operator*(Complex c) const;
  Functional operator-() const { return *this * Complex(-1.0); }

 private:
  SystemPtr s_;
  ComplexMatrix riesz_;
  ComplexMatrix canonical_;
  ComplexVector coords_;
};

Complex eval(const Functional& f, const ComplexMatrix& x);
Functional vector_state(SystemPtr s, const ComplexVector& v);

// n x n grid [f_ij] over one system, identified with x -> [f_ij(x)].
class MatrixFunctional {
 public:
  explicit MatrixFunctional(std::vector<std::vector<Functional>> grid);
  static MatrixFunctional diagonal(int n, const Functional& f);

  int n() const { return static_cast<int>(grid_.size()); }
  const SystemPtr& system() const { return grid_[0][0].system(); }
  const Functional& operator()(int i, int j) const { return grid_[i][j]; }
  const std::vector<std::vector<Functional>>& grid() const { return grid_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  // W0 = sum_ij E_ji (x) F_ij with canonical F_ij; tr(W0 (E_ij (x) x)) = f_ij(x).
  ComplexMatrix choi() const;
  bool is_hermitian(double tol = 1e-10) const;

  MatrixFunctional operator+(const MatrixFunctional& o) const;
  MatrixFunctional operator-(const MatrixFunctional& o) const;
  MatrixFunctional operator*(Complex c) const;

 private:
  std::vector<std::vector<Functional>> grid_;
};

inline constexpr double kDualTol = 1e-7;

struct PositivityReport {
  Decision decision = Decision::undecided;
  double lower = 0.0;  // certified lower bound of min f over states of S
  double upper = 0.0;  // value attained at `witness`
  ComplexMatrix witness;
  bool exact = false;
};

// Minimizes f over S^+ with trace one. Non-Hermitian f is rejected outright.
PositivityReport positivity(const Functional& f, double tol = kDualTol);
bool is_positive_functional(const Functional& f, double tol = kDualTol);

struct CpOptions {
  double tol = kDualTol;
  int max_iter = 20000;
  // Use the feasibility solver even when S is a full matrix algebra.
  bool force_solver = false;
  // Start the solver from the extension certificate of the section solver on
  // M_n(S) instead of from the least-norm point of the affine set.
  bool warm_start = true;
};

struct CpVerdict {
  Decision decision = Decision::undecided;
  std::string route;  // "choi-eigenvalue", "dykstra" or "hermiticity"
  double choi_lambda_min = 0.0;
  FeasibilityVerdict solver;
};

// Choi feasibility: W >= 0 on C^n (x) C^d with tr(W (E_ij (x) B_b)) = f_ij(B_b).
FeasibilityProblem choi_problem(const MatrixFunctional& mf, double tol = kDualTol,
                                int max_iter = 20000);
CpVerdict is_cp(const MatrixFunctional& mf, const CpOptions& opts = {});

// Normalized trace, faithful on every S in M_d.
Functional faithful_state(SystemPtr s);
// sum_n 2^{-n} states[n-1], renormalized to total weight one.
Functional series_state(const std::vector<Functional>& states);
// f(x) > tol for every state-normalized x in S^+.
bool is_faithful(const Functional& f, double tol = 1e-9);

enum class RadiusStatus { found, none, undecided };
const char* to_string(RadiusStatus s);

struct DualRadius {
  RadiusStatus status = RadiusStatus::none;
  double r = 0.0;  // certified: r (I_n (x) delta) - g passed
  int evaluations = 0;
  int undecided_evaluations = 0;
};

struct DualRadiusOptions {
  double precision = 1e-6;
  double r_max = 1e6;
  // Level-1 positivity slack. Zero certifies r delta - g >= 0 exactly, so the
  // returned r also passes the feasibility route of is_cp.
  double tol = 0.0;
  CpOptions cp;
};

// Smallest r with r (I_n (x) delta) - g in M_n(S')^+. r may be negative.
// Undecided evaluations count as failures; if nothing in range is certified
// and some evaluation was undecided the status is undecided.
DualRadius dual_order_unit_radius(const Functional& delta,
                                  const MatrixFunctional& g,
                                  const DualRadiusOptions& opts = {});
// Level-n form with g repeated on the diagonal.
DualRadius dual_order_unit_radius(const Functional& delta, const Functional& g,
                                  int level, const DualRadiusOptions& opts = {});

struct EquivalenceOptions {
  double level_precision = 1e-3;
  double archimedean_tol = 1e-6;
  int archimedean_steps = 20;  // r = 2^-1 .. 2^-steps
};

struct EquivalenceLevel {
  int level = 0;
  int samples = 0;
  int found = 0;
  int undecided = 0;
  double max_radius = 0.0;
};

struct EquivalenceReport {
  bool faithful = false;
  // When delta is not faithful: a Hermitian g that no multiple of delta
  // dominates.
  std::optional<Functional> undominated;
  std::vector<EquivalenceLevel> levels;
  int archimedean_samples = 0;
  int archimedean_premise = 0;
  int archimedean_violations = 0;
  std::vector<Functional> counterexamples;

  bool order_unit() const;
  bool matrix_order_unit() const;
  bool archimedean() const { return archimedean_violations == 0; }
  bool passed() const {
    return order_unit() && matrix_order_unit() && archimedean();
  }
};

EquivalenceReport verify_dual_unit_equivalences(
    const Functional& delta, int max_level, int samples, Rng& rng,
    const EquivalenceOptions& opts = {});

struct PaulsenSystem {
  SystemPtr system;
  Functional trace_unit;
};

// [[lambda I, X], [Y*, mu I]] in M_{2d} for X, Y in span(v_basis); the unit
// functional reads off lambda + mu.
PaulsenSystem paulsen_system(const std::vector<ComplexMatrix>& v_basis, int d);

// Restriction to a subsystem t of f's system.
Functional restrict(const Functional& f, SystemPtr t);
// The functional on s agreeing with g, defined when g's system spans s.
Functional extend_unique(const Functional& g, SystemPtr s);

// Hermitian functional with unit coordinate norm.
Functional random_hermitian_functional(SystemPtr s, Rng& rng);
// Hermitian [f_ij]: f_ji = f_ij*.
MatrixFunctional random_hermitian_matrix_functional(SystemPtr s, int n,
                                                    Rng& rng);

}  // namespace opsys
