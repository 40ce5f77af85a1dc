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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "opsys/linalg.hpp"
#include "opsys/random.hpp"

namespace opsys {

inline constexpr double kMembershipTol = 1e-8;
inline constexpr double kRankTol = 1e-9;

// Unital, adjoint-closed subspace of M_d. The stored basis is Hermitian and
// orthonormal for <A, B> = tr(A* B); basis()[0] is I/sqrt(d), the rest are
// traceless. Immutable once built.
class OperatorSystem {
 public:
  // Smallest operator system containing `generators`.
  static OperatorSystem make(const std::vector<ComplexMatrix>& generators,
                             int d);
  // Trusted constructor for a basis already known to be Hermitian,
  // orthonormal and to start with I/sqrt(d). Used for amplifications.
  static OperatorSystem from_orthonormal_basis(
      int d, std::vector<ComplexMatrix> basis,
      std::vector<ComplexMatrix> generators = {});

  int d() const { return d_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool is_full() const { return dim() == d_ * d_; }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }
  const ComplexMatrix& basis(int i) const { return basis_[i]; }
  // Generators the system was built from (for serialization).
  const std::vector<ComplexMatrix>& generators() const { return generators_; }
  ComplexMatrix unit() const { return ComplexMatrix::Identity(d_, d_); }

  // c_i = tr(B_i x); real for Hermitian x in S.
  ComplexVector coordinates(const ComplexMatrix& x) const;
  ComplexMatrix from_coordinates(const ComplexVector& c) const;
  ComplexMatrix from_coordinates(const RealVector& c) const;
  ComplexMatrix project(const ComplexMatrix& x) const;
  // Frobenius distance from x to S.
  double residual(const ComplexMatrix& x) const;
  bool contains(const ComplexMatrix& x, double tol = kMembershipTol) const {
    return residual(x) <= tol;
  }

 private:
  OperatorSystem() = default;
  void build_stack();

  int d_ = 0;
  std::vector<ComplexMatrix> basis_;
  std::vector<ComplexMatrix> generators_;
  ComplexMatrix stack_;  // d^2 x dim, column i = vec(B_i)
};

using SystemPtr = std::shared_ptr<const OperatorSystem>;

OperatorSystem make_operator_system(
    const std::vector<ComplexMatrix>& generators, int d);
SystemPtr share(OperatorSystem s);

// Named systems: "full:d", "pauli-span", "diag:d", "toeplitz:d".
OperatorSystem builtin_system(const std::string& name);

// M_n(S) as an operator system inside M_{nd}.
OperatorSystem amplify(const OperatorSystem& s, int n);

// Element of M_n(S) or M_n(M_d), stored flattened: block (i, j) occupies
// rows and columns [i*d, (i+1)*d).
class LevelElement {
 public:
  LevelElement(int n, int d, ComplexMatrix flat);
  static LevelElement level1(const ComplexMatrix& x);
  static LevelElement from_grid(
      const std::vector<std::vector<ComplexMatrix>>& grid);
  // I_n tensor e.
  static LevelElement diagonal(int n, const ComplexMatrix& e);

  int n() const { return n_; }
  int d() const { return d_; }
  const ComplexMatrix& flat() const { return flat_; }
  ComplexMatrix block(int i, int j) const;
  std::vector<std::vector<ComplexMatrix>> grid() const;

 private:
  int n_;
  int d_;
  ComplexMatrix flat_;
};

bool subspace_member(const OperatorSystem& s, const LevelElement& x,
                     double tol = kMembershipTol);
double subspace_residual(const OperatorSystem& s, const LevelElement& x);
bool cone_member(const OperatorSystem& s, const LevelElement& x,
                 double tol = kMembershipTol);

struct RadiusOptions {
  double r_max = 1e6;
  double precision = 1e-8;
  double tol = kMembershipTol;
};

// Smallest r >= 0 with r (I_n tensor e) - x in M_n(S)^+, or nullopt when no
// r <= r_max works. Throws NotHermitianError for non-Hermitian x.
std::optional<double> order_unit_radius_level(
    const OperatorSystem& s, const ComplexMatrix& e, const LevelElement& x,
    const RadiusOptions& opts = {});

struct LevelRadii {
  int level = 0;
  int samples = 0;
  int dominated = 0;
  double max_radius = 0.0;
  std::vector<std::optional<double>> radii;
};

struct MatrixOrderUnitReport {
  bool is_unit = false;
  std::vector<LevelRadii> levels;
  // First Hermitian element found that e does not dominate.
  std::optional<LevelElement> counterexample;
};

// Samples `samples_per_level` Hermitian elements of M_n(S) for each level and
// computes their radii. Level 1 is additionally searched deterministically
// over +-B_i, which is exhaustive: e is an order unit iff every basis element
// is dominated.
MatrixOrderUnitReport is_matrix_order_unit(const OperatorSystem& s,
                                           const ComplexMatrix& e,
                                           int max_level, Rng& rng,
                                           int samples_per_level = 32,
                                           const RadiusOptions& opts = {});

// Samplers. Elements are normalized to O(1) Frobenius norm.
ComplexMatrix random_element(const OperatorSystem& s, Rng& rng);
ComplexMatrix random_hermitian_element(const OperatorSystem& s, Rng& rng);
LevelElement random_level_element(const OperatorSystem& s, int n, Rng& rng);
LevelElement random_level_hermitian(const OperatorSystem& s, int n, Rng& rng);
// h - lambda_min(h) I + shift I for a random Hermitian h in M_n(S).
LevelElement random_level_positive(const OperatorSystem& s, int n, Rng& rng,
                                   double shift = 0.0);
// Random operator system in M_d spanned by I and k random generators.
OperatorSystem random_system(Rng& rng, int d, int generators);

}  // namespace opsys
