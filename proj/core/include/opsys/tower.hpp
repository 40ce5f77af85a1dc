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

#include <functional>
#include <string>
#include <vector>

#include "opsys/dual_space.hpp"
#include "opsys/operator_system.hpp"

namespace opsys {

// Linear map between operator systems, stored as the images of the domain's
// orthonormal basis.
class LinearMap {
 public:
  LinearMap(SystemPtr dom, SystemPtr cod, std::vector<ComplexMatrix> images);
  static LinearMap from_function(
      SystemPtr dom, SystemPtr cod,
      const std::function<ComplexMatrix(const ComplexMatrix&)>& f);
  static LinearMap identity(SystemPtr s);

  const SystemPtr& domain() const { return dom_; }
  const SystemPtr& codomain() const { return cod_; }
  const std::vector<ComplexMatrix>& images() const { return images_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  LevelElement apply(const LevelElement& x) const;
  // next o this
  LinearMap then(const LinearMap& next) const;
  // a(i, j) = tr(C_j phi(B_i)) for bases B of the domain and C of the
  // codomain; pulls codomain functional coordinates back to the domain.
  const ComplexMatrix& adjoint_matrix() const { return adjoint_; }
  Functional pullback(const Functional& f) const;

 private:
  SystemPtr dom_;
  SystemPtr cod_;
  std::vector<ComplexMatrix> images_;
  ComplexMatrix image_stack_;  // cod d^2 x dom dim
  ComplexMatrix adjoint_;      // dom dim x cod dim
};

// Builds the map from images of [I, g_1, ..., g_k] where g are the domain's
// generators, extended to adjoints by phi(g*) = phi(g)*. Throws
// ValidationError("well-defined") when the images are inconsistent with the
// linear relations among the spanning set.
LinearMap map_from_generator_images(SystemPtr dom, SystemPtr cod,
                                    const std::vector<ComplexMatrix>& images);

struct TowerValidation {
  int max_level = 3;
  int samples_per_level = 4;
  double tol = 1e-9;
};

// Checks one connecting map; throws ValidationError naming the failed check:
// "unital", "codomain-membership", "hermitian", "complete-order-embedding".
void validate_embedding(const LinearMap& phi, Rng& rng,
                        const TowerValidation& v = {});

// S_0 -> S_1 -> ... -> S_{K-1} with validated unital complete order
// embeddings. Stages are 0-based. All composites are precomputed.
class Tower {
 public:
  Tower(std::vector<SystemPtr> systems, std::vector<LinearMap> maps, Rng& rng,
        const TowerValidation& v = {}, std::string name = "custom");

  int depth() const { return static_cast<int>(systems_.size()); }
  const std::string& name() const { return name_; }
  const SystemPtr& system(int k) const { return systems_.at(k); }
  const LinearMap& map(int k) const { return maps_.at(k); }
  const std::vector<LinearMap>& maps() const { return maps_; }
  // phi_{k,m}: S_k -> S_m for k <= m.
  const LinearMap& composite(int k, int m) const;

 private:
  std::string name_;
  std::vector<SystemPtr> systems_;
  std::vector<LinearMap> maps_;
  std::vector<std::vector<LinearMap>> composites_;  // [k][m - k]
};

// "matrix-doubling:K": M_2, M_4, ..., M_{2^K} with x -> x (x) I_2.
// "corner:K": M_2, ..., M_{K+1} with x -> x (+) tr(x)/k.
Tower make_tower(const std::string& spec, Rng& rng,
                 const TowerValidation& v = {});

// ------------------------------------------------------------------ threads

struct ElementThread {
  int base = 0;
  std::vector<LevelElement> images;  // images[m - base] = phi_{base,m}(x)

  const LevelElement& element() const { return images.front(); }
  const LevelElement& deepest() const { return images.back(); }
  int level() const { return images.front().n(); }
};

ElementThread make_element_thread(const Tower& t, int k, const LevelElement& x);
ElementThread make_element_thread(const Tower& t, int k, const ComplexMatrix& x);

enum class NormKind { h, min };

struct NormSequence {
  std::vector<double> values;
  double limit = 0.0;
  bool null = false;
  bool non_increasing = true;
};

NormSequence thread_norm_sequence(const Tower& t, const ElementThread& e,
                                  NormKind kind);

// r (I_n (x) I) + phi_{k,K}(x) in M_n(S_K)^+ at the deepest stage.
bool inductive_positive(const Tower& t, const ElementThread& e,
                        double r = 1e-6);

struct FunctionalThread {
  std::vector<Functional> entries;  // f_0 .. f_{K-1}
  double norm_sup = 0.0;  // sup of trace norms of canonical Riesz matrices
};

struct MatrixFunctionalThread {
  std::vector<MatrixFunctional> entries;
};

// Adjoint maps of a tower together with the trace-state units.
class DualTower {
 public:
  explicit DualTower(const Tower& t);
  int depth() const { return static_cast<int>(units_.size()); }
  // phi_k'(f_{k+1}) = f_{k+1} o phi_k.
  Functional pull(int k, const Functional& f_next) const;
  const Functional& unit(int k) const { return units_.at(k); }

 private:
  const Tower* tower_;
  std::vector<Functional> units_;
};

DualTower dual_tower(const Tower& t);

FunctionalThread pullback_thread(const Tower& t, const Functional& f_deepest);
MatrixFunctionalThread pullback_thread(const Tower& t,
                                       const MatrixFunctional& f_deepest);
// max over k and basis B of S_k of |f_{k+1}(phi_k(B)) - f_k(B)|.
double compatibility_residual(const Tower& t, const FunctionalThread& f);

// f_k(x_k), after checking |f_m(phi_{k,m}(x_k)) - f_k(x_k)| <= tol for every
// m; throws InconsistentThreadError otherwise. Level-n threads pair as
// sum_ij f_ij(x_ij).
Complex pairing(const Tower& t, const ElementThread& e,
                const FunctionalThread& f, double tol = 1e-9,
                double* residual = nullptr);
Complex pairing(const Tower& t, const ElementThread& e,
                const MatrixFunctionalThread& f, double tol = 1e-9,
                double* residual = nullptr);

// (Theta f)_k = f_k o theta_k for a stage-wise family theta_k: S_k -> S_k.
FunctionalThread induced_thread_map(const Tower& t,
                                    const std::vector<LinearMap>& theta,
                                    const FunctionalThread& f);
// max_k || phi_k o theta_k - theta_{k+1} o phi_k || on bases.
double commutation_residual(const Tower& t, const std::vector<LinearMap>& theta);

struct StageNorms {
  double min = 0.0;
  double max_upper = 0.0;
};
// Norms of d_k F_k in (M_{d_k}, I) for full-algebra stages; identifies S_k'
// with M_{d_k} ordered by the trace-state unit.
std::vector<StageNorms> functional_thread_norms(const Tower& t,
                                                const FunctionalThread& f);

// ------------------------------------------------------------- verification

struct DualConeReport {
  int constancy_pairs = 0;
  double max_constancy_residual = 0.0;
  int positive_pairs = 0;
  double min_positive_pairing = 0.0;
  int positive_violations = 0;
  int nonpositive_elements = 0;
  int element_witnesses = 0;
  int nonpositive_functionals = 0;
  int functional_witnesses = 0;
  std::vector<std::string> failures;

  bool passed() const;
};

DualConeReport verify_dual_cones(const Tower& t, int samples, Rng& rng);

struct GammaReport {
  int injectivity_samples = 0;
  int injectivity_failures = 0;
  double max_reconstruction_residual = 0.0;
  int order_samples = 0;
  int order_disagreements = 0;
  int unit_samples = 0;
  int unit_failures = 0;
  int complete_samples = 0;
  int complete_disagreements = 0;
  int complete_nonpositive = 0;
  int complete_witnesses = 0;
  std::vector<std::string> failures;

  bool passed() const;
};

GammaReport verify_gamma(const Tower& t, int samples, int max_level, Rng& rng);

}  // namespace opsys
