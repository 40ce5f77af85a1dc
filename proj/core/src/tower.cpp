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

#include "opsys/tower.hpp"

#include <cmath>
#include <string>

#include "opsys/errors.hpp"
#include "opsys/order_norms.hpp"

namespace opsys {

namespace {

Eigen::Map<const ComplexVector> as_vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

bool same_system(const SystemPtr& a, const SystemPtr& b) {
  return a.get() == b.get() || (a->d() == b->d() && a->dim() == b->dim());
}

}  // namespace

// ----------------------------------------------------------------- LinearMap

LinearMap::LinearMap(SystemPtr dom, SystemPtr cod,
                     std::vector<ComplexMatrix> images)
    : dom_(std::move(dom)), cod_(std::move(cod)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != dom_->dim()) {
    throw DimensionError("LinearMap: need one image per domain basis element");
  }
  const int dc = cod_->d();
  image_stack_.resize(static_cast<Eigen::Index>(dc) * dc, dom_->dim());
  adjoint_.resize(dom_->dim(), cod_->dim());
  for (int i = 0; i < dom_->dim(); ++i) {
    if (images_[i].rows() != dc || images_[i].cols() != dc) {
      throw DimensionError("LinearMap: image has wrong size");
    }
    image_stack_.col(i) = as_vec(images_[i]);
    adjoint_.row(i) = cod_->coordinates(images_[i]).transpose();
  }
}

LinearMap LinearMap::from_function(
    SystemPtr dom, SystemPtr cod,
    const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
  std::vector<ComplexMatrix> images;
  for (const auto& b : dom->basis()) images.push_back(f(b));
  return LinearMap(std::move(dom), std::move(cod), std::move(images));
}

LinearMap LinearMap::identity(SystemPtr s) {
  std::vector<ComplexMatrix> images = s->basis();
  SystemPtr c = s;
  return LinearMap(std::move(s), std::move(c), std::move(images));
}

ComplexMatrix LinearMap::apply(const ComplexMatrix& x) const {
  ComplexVector v = image_stack_ * dom_->coordinates(x);
  return Eigen::Map<ComplexMatrix>(v.data(), cod_->d(), cod_->d());
}

LevelElement LinearMap::apply(const LevelElement& x) const {
  if (x.d() != dom_->d()) throw DimensionError("LinearMap: level element size");
  std::vector<std::vector<ComplexMatrix>> g(x.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) g[i].push_back(apply(x.block(i, j)));
  return LevelElement::from_grid(g);
}

LinearMap LinearMap::then(const LinearMap& next) const {
  std::vector<ComplexMatrix> images;
  images.reserve(images_.size());
  for (const auto& im : images_) images.push_back(next.apply(im));
  return LinearMap(dom_, next.cod_, std::move(images));
}

Functional LinearMap::pullback(const Functional& f) const {
  if (!same_system(f.system(), cod_)) {
    throw DimensionError("pullback: functional lives on another system");
  }
  return Functional::from_coordinates(dom_, adjoint_ * f.coordinates());
}

LinearMap map_from_generator_images(SystemPtr dom, SystemPtr cod,
                                    const std::vector<ComplexMatrix>& images) {
  const auto& gens = dom->generators();
  if (images.size() != gens.size() + 1) {
    throw ValidationError(
        "well-defined", "expected images of the unit and of " +
                            std::to_string(gens.size()) + " generators, got " +
                            std::to_string(images.size()));
  }
  const int d = dom->d();
  std::vector<ComplexMatrix> span{ComplexMatrix::Identity(d, d)};
  std::vector<ComplexMatrix> imgs{images[0]};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    span.push_back(gens[i]);
    imgs.push_back(images[i + 1]);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    span.push_back(gens[i].adjoint());
    imgs.push_back(images[i + 1].adjoint());
  }
  for (const auto& im : imgs) {
    if (im.rows() != cod->d() || im.cols() != cod->d()) {
      throw DimensionError("map_from_generator_images: image has wrong size");
    }
  }
  ComplexMatrix smat(static_cast<Eigen::Index>(d) * d, span.size());
  for (std::size_t l = 0; l < span.size(); ++l) smat.col(l) = as_vec(span[l]);
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod_solver(smat);
  std::vector<ComplexMatrix> basis_images;
  for (const auto& b : dom->basis()) {
    const ComplexVector alpha = cod_solver.solve(ComplexVector(as_vec(b)));
    ComplexMatrix img = ComplexMatrix::Zero(cod->d(), cod->d());
    for (std::size_t l = 0; l < span.size(); ++l) img += alpha(l) * imgs[l];
    basis_images.push_back(img);
  }
  LinearMap phi(dom, cod, std::move(basis_images));
  for (std::size_t l = 0; l < span.size(); ++l) {
    const double r = (phi.apply(span[l]) - imgs[l]).norm();
    if (r > 1e-9 * std::max(1.0, imgs[l].norm())) {
      throw ValidationError("well-defined",
                            "generator images violate a linear relation "
                            "(residual " + std::to_string(r) + ")");
    }
  }
  return phi;
}

void validate_embedding(const LinearMap& phi, Rng& rng,
                        const TowerValidation& v) {
  const OperatorSystem& dom = *phi.domain();
  const OperatorSystem& cod = *phi.codomain();
  const double unit_err = (phi.apply(dom.unit()) - cod.unit()).norm();
  if (unit_err > v.tol) {
    throw ValidationError("unital", "phi(I) differs from I by " +
                                        std::to_string(unit_err));
  }
  for (const auto& im : phi.images()) {
    const double r = cod.residual(im);
    if (r > v.tol) {
      throw ValidationError("codomain-membership",
                            "image leaves the codomain system (residual " +
                                std::to_string(r) + ")");
    }
    const double a = asymmetry(im);
    if (a > v.tol) {
      throw ValidationError("hermitian", "image of a Hermitian basis element "
                                         "is not Hermitian");
    }
  }
  const double shifts[] = {0.1, 0.0, -0.1};
  for (int n = 1; n <= v.max_level; ++n) {
    for (int k = 0; k < v.samples_per_level; ++k) {
      for (double shift : shifts) {
        const LevelElement x = random_level_positive(dom, n, rng, shift);
        const bool before = cone_member(dom, x);
        const bool after = cone_member(cod, phi.apply(x));
        if (before != after) {
          throw ValidationError(
              "complete-order-embedding",
              "cone membership changed at level " + std::to_string(n) +
                  " (shift " + std::to_string(shift) + ")");
        }
      }
    }
  }
}

// --------------------------------------------------------------------- Tower

Tower::Tower(std::vector<SystemPtr> systems, std::vector<LinearMap> maps,
             Rng& rng, const TowerValidation& v, std::string name)
    : name_(std::move(name)), systems_(std::move(systems)),
      maps_(std::move(maps)) {
  if (systems_.empty()) throw ValidationError("depth", "tower has no stages");
  if (maps_.size() + 1 != systems_.size()) {
    throw ValidationError("depth", "need exactly one map between stages");
  }
  for (std::size_t k = 0; k < maps_.size(); ++k) {
    if (!same_system(maps_[k].domain(), systems_[k]) ||
        !same_system(maps_[k].codomain(), systems_[k + 1])) {
      throw ValidationError("chain", "map " + std::to_string(k) +
                                         " does not connect stages " +
                                         std::to_string(k) + " and " +
                                         std::to_string(k + 1));
    }
    validate_embedding(maps_[k], rng, v);
  }
  composites_.resize(systems_.size());
  for (std::size_t k = 0; k < systems_.size(); ++k) {
    composites_[k].push_back(LinearMap::identity(systems_[k]));
    for (std::size_t m = k; m < maps_.size(); ++m) {
      composites_[k].push_back(composites_[k].back().then(maps_[m]));
    }
  }
}

const LinearMap& Tower::composite(int k, int m) const {
  if (k < 0 || m < k || m >= depth()) {
    throw DimensionError("composite: need 0 <= k <= m < depth");
  }
  return composites_[k][m - k];
}

namespace {

int parse_depth(const std::string& spec, std::size_t colon) {
  const std::string tail = spec.substr(colon + 1);
  std::size_t pos = 0;
  int k = 0;
  try {
    k = std::stoi(tail, &pos);
  } catch (const std::exception&) {
    throw ParseError("tower spec '" + spec + "': bad depth");
  }
  if (pos != tail.size() || k < 1 || k > 6) {
    throw ParseError("tower spec '" + spec + "': depth must be in 1..6");
  }
  return k;
}

}  // namespace

Tower make_tower(const std::string& spec, Rng& rng, const TowerValidation& v) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParseError("tower spec '" + spec + "': expected kind:depth");
  }
  const std::string kind = spec.substr(0, colon);
  const int depth = parse_depth(spec, colon);
  std::vector<SystemPtr> systems;
  std::vector<LinearMap> maps;
  if (kind == "matrix-doubling") {
    for (int k = 0; k < depth; ++k) {
      systems.push_back(
          share(builtin_system("full:" + std::to_string(1 << (k + 1)))));
    }
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    for (int k = 0; k + 1 < depth; ++k) {
      maps.push_back(LinearMap::from_function(
          systems[k], systems[k + 1],
          [&](const ComplexMatrix& x) { return kron(x, i2); }));
    }
  } else if (kind == "corner") {
    for (int k = 0; k < depth; ++k) {
      systems.push_back(share(builtin_system("full:" + std::to_string(k + 2))));
    }
    for (int k = 0; k + 1 < depth; ++k) {
      const double size = k + 2;
      maps.push_back(LinearMap::from_function(
          systems[k], systems[k + 1], [size](const ComplexMatrix& x) {
            ComplexMatrix tail(1, 1);
            tail(0, 0) = x.trace() / size;
            return direct_sum(x, tail);
          }));
    }
  } else {
    throw ParseError("tower spec '" + spec + "': unknown kind '" + kind + "'");
  }
  return Tower(std::move(systems), std::move(maps), rng, v, spec);
}

// ------------------------------------------------------------------- threads

ElementThread make_element_thread(const Tower& t, int k, const LevelElement& x) {
  if (k < 0 || k >= t.depth()) throw DimensionError("thread: stage out of range");
  const OperatorSystem& s = *t.system(k);
  const double r = subspace_residual(s, x);
  if (r > kMembershipTol) {
    throw MembershipError("thread: element is not in M_n(S_k)", r);
  }
  ElementThread e;
  e.base = k;
  e.images.push_back(x);
  for (int m = k; m + 1 < t.depth(); ++m) {
    e.images.push_back(t.map(m).apply(e.images.back()));
  }
  return e;
}

ElementThread make_element_thread(const Tower& t, int k, const ComplexMatrix& x) {
  return make_element_thread(t, k, LevelElement::level1(x));
}

NormSequence thread_norm_sequence(const Tower& t, const ElementThread& e,
                                  NormKind kind) {
  if (e.level() != 1) throw DimensionError("thread_norm_sequence: level-1 only");
  NormSequence out;
  for (std::size_t i = 0; i < e.images.size(); ++i) {
    const OperatorSystem& s = *t.system(e.base + static_cast<int>(i));
    const ComplexMatrix& x = e.images[i].flat();
    out.values.push_back(kind == NormKind::h ? order_norm_h(s, x)
                                             : min_order_norm(s, x));
  }
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (out.values[i] > out.values[i - 1] + 1e-9) out.non_increasing = false;
  }
  out.limit = out.values.back();
  out.null = out.limit < 1e-8;
  return out;
}

bool inductive_positive(const Tower& t, const ElementThread& e, double r) {
  const LevelElement& y = e.deepest();
  const OperatorSystem& s = *t.system(t.depth() - 1);
  const LevelElement shifted(
      y.n(), y.d(),
      y.flat() + r * ComplexMatrix::Identity(y.flat().rows(), y.flat().cols()));
  return cone_member(s, shifted);
}

DualTower::DualTower(const Tower& t) : tower_(&t) {
  for (int k = 0; k < t.depth(); ++k) units_.push_back(faithful_state(t.system(k)));
}

Functional DualTower::pull(int k, const Functional& f_next) const {
  return tower_->map(k).pullback(f_next);
}

DualTower dual_tower(const Tower& t) { return DualTower(t); }

FunctionalThread pullback_thread(const Tower& t, const Functional& f_deepest) {
  const int depth = t.depth();
  if (!same_system(f_deepest.system(), t.system(depth - 1))) {
    throw DimensionError("pullback_thread: functional is not on the last stage");
  }
  std::vector<Functional> rev{f_deepest};
  for (int k = depth - 2; k >= 0; --k) rev.push_back(t.map(k).pullback(rev.back()));
  FunctionalThread out;
  out.entries.assign(rev.rbegin(), rev.rend());
  for (const auto& f : out.entries) {
    out.norm_sup = std::max(out.norm_sup, trace_norm(f.canonical()));
  }
  return out;
}

MatrixFunctionalThread pullback_thread(const Tower& t,
                                       const MatrixFunctional& f_deepest) {
  const int n = f_deepest.n();
  std::vector<std::vector<FunctionalThread>> per(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) per[i].push_back(pullback_thread(t, f_deepest(i, j)));
  MatrixFunctionalThread out;
  for (int k = 0; k < t.depth(); ++k) {
    std::vector<std::vector<Functional>> g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i].push_back(per[i][j].entries[k]);
    out.entries.emplace_back(std::move(g));
  }
  return out;
}

double compatibility_residual(const Tower& t, const FunctionalThread& f) {
  double worst = 0.0;
  for (int k = 0; k + 1 < t.depth(); ++k) {
    const OperatorSystem& s = *t.system(k);
    for (int i = 0; i < s.dim(); ++i) {
      const Complex lhs = f.entries[k + 1].eval(t.map(k).apply(s.basis(i)));
      worst = std::max(worst, std::abs(lhs - f.entries[k].coordinates()(i)));
    }
  }
  return worst;
}

Complex pairing(const Tower& t, const ElementThread& e,
                const FunctionalThread& f, double tol, double* residual) {
  if (e.level() != 1) throw DimensionError("pairing: level-1 element expected");
  if (static_cast<int>(f.entries.size()) != t.depth()) {
    throw DimensionError("pairing: functional thread has wrong depth");
  }
  const Complex value = f.entries[e.base].eval(e.element().flat());
  double worst = 0.0;
  for (std::size_t i = 1; i < e.images.size(); ++i) {
    const Complex v =
        f.entries[e.base + static_cast<int>(i)].eval(e.images[i].flat());
    worst = std::max(worst, std::abs(v - value));
  }
  if (residual) *residual = worst;
  if (worst > tol) {
    throw InconsistentThreadError("pairing: value changes along the thread",
                                  worst);
  }
  return value;
}

namespace {

Complex level_pairing(const MatrixFunctional& f, const LevelElement& x) {
  Complex total = 0.0;
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) total += f(i, j).eval(x.block(i, j));
  return total;
}

}  // namespace

Complex pairing(const Tower& t, const ElementThread& e,
                const MatrixFunctionalThread& f, double tol, double* residual) {
  if (static_cast<int>(f.entries.size()) != t.depth() ||
      f.entries[0].n() != e.level()) {
    throw DimensionError("pairing: thread shapes do not match");
  }
  const Complex value = level_pairing(f.entries[e.base], e.element());
  double worst = 0.0;
  for (std::size_t i = 1; i < e.images.size(); ++i) {
    const Complex v =
        level_pairing(f.entries[e.base + static_cast<int>(i)], e.images[i]);
    worst = std::max(worst, std::abs(v - value));
  }
  if (residual) *residual = worst;
  if (worst > tol) {
    throw InconsistentThreadError("pairing: value changes along the thread",
                                  worst);
  }
  return value;
}

FunctionalThread induced_thread_map(const Tower& t,
                                    const std::vector<LinearMap>& theta,
                                    const FunctionalThread& f) {
  if (static_cast<int>(theta.size()) != t.depth()) {
    throw DimensionError("induced_thread_map: need one map per stage");
  }
  FunctionalThread out;
  for (int k = 0; k < t.depth(); ++k) {
    out.entries.push_back(theta[k].pullback(f.entries[k]));
    out.norm_sup = std::max(out.norm_sup, trace_norm(out.entries.back().canonical()));
  }
  return out;
}

double commutation_residual(const Tower& t, const std::vector<LinearMap>& theta) {
  double worst = 0.0;
  for (int k = 0; k + 1 < t.depth(); ++k) {
    for (const auto& b : t.system(k)->basis()) {
      const ComplexMatrix lhs = t.map(k).apply(theta[k].apply(b));
      const ComplexMatrix rhs = theta[k + 1].apply(t.map(k).apply(b));
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

std::vector<StageNorms> functional_thread_norms(const Tower& t,
                                                const FunctionalThread& f) {
  std::vector<StageNorms> out;
  for (int k = 0; k < t.depth(); ++k) {
    const OperatorSystem& s = *t.system(k);
    if (!s.is_full()) {
      throw Error("functional_thread_norms: stage " + std::to_string(k) +
                  " is not a full matrix algebra");
    }
    const ComplexMatrix x = double(s.d()) * f.entries[k].canonical();
    StageNorms sn;
    sn.min = min_order_norm(s, x);
    sn.max_upper = max_order_norm(s, x).upper;
    out.push_back(sn);
  }
  return out;
}

// -------------------------------------------------------------- verification

namespace {

Functional random_complex_functional(const SystemPtr& s, Rng& rng) {
  ComplexVector u(s->dim());
  for (int i = 0; i < s->dim(); ++i) {
    const double re = gaussian(rng);
    const double im = gaussian(rng);
    u(i) = Complex(re, im);
  }
  return Functional::from_coordinates(s, u / u.norm());
}

bool thread_positive(const FunctionalThread& f) {
  for (const auto& e : f.entries)
    if (positivity(e).decision != Decision::yes) return false;
  return true;
}

// Element of M_n(S)^+ (trace one) on which the matrix functional with Choi
// matrix w is most negative.
LevelElement separating_element(const OperatorSystem& s, int n,
                                const ComplexMatrix& w) {
  if (s.is_full()) {
    const SpectralDecomposition sd = spectral_decompose(w);
    const ComplexVector v = sd.eigenvectors.col(sd.eigenvalues.size() - 1);
    return LevelElement(n, s.d(), v * v.adjoint());
  }
  const OperatorSystem big = amplify(s, n);
  const SectionResult r = section_minimize(big, w);
  return LevelElement(n, s.d(), r.minimizer);
}

}  // namespace

bool DualConeReport::passed() const {
  return max_constancy_residual <= 1e-9 && positive_violations == 0 &&
         element_witnesses == nonpositive_elements &&
         functional_witnesses == nonpositive_functionals && failures.empty();
}

DualConeReport verify_dual_cones(const Tower& t, int samples, Rng& rng) {
  DualConeReport rep;
  const int last = t.depth() - 1;
  const SystemPtr& deep = t.system(last);
  rep.min_positive_pairing = INFINITY;
  for (int it = 0; it < samples; ++it) {
    // Constancy of the pairing on an arbitrary pair.
    {
      const int k = uniform_int(rng, 0, last);
      const ElementThread e =
          make_element_thread(t, k, random_element(*t.system(k), rng));
      const FunctionalThread f = pullback_thread(t, random_complex_functional(deep, rng));
      double res = 0.0;
      try {
        pairing(t, e, f, 1e-9, &res);
      } catch (const InconsistentThreadError& err) {
        rep.failures.push_back(std::string("constancy: ") + err.what());
      }
      ++rep.constancy_pairs;
      rep.max_constancy_residual = std::max(rep.max_constancy_residual, res);
    }
    // Positive element against positive functional.
    {
      const int k = uniform_int(rng, 0, last);
      const LevelElement x =
          random_level_positive(*t.system(k), 1, rng, uniform(rng, 0.0, 0.2));
      const ElementThread e = make_element_thread(t, k, x);
      const int rank = uniform_int(rng, 1, deep->d());
      const FunctionalThread f =
          pullback_thread(t, Functional(deep, random_density(rng, deep->d(), rank)));
      const double p = pairing(t, e, f).real();
      ++rep.positive_pairs;
      rep.min_positive_pairing = std::min(rep.min_positive_pairing, p);
      if (p < -1e-8) ++rep.positive_violations;
    }
    // Non-positive element: separating vector state at the deepest stage.
    {
      const int k = uniform_int(rng, 0, last);
      const OperatorSystem& s = *t.system(k);
      ComplexMatrix x;
      if (it % 5 == 0) {
        x = -s.unit();
      } else {
        const ComplexMatrix h = random_hermitian_element(s, rng);
        const double eps = uniform(rng, 1e-3, 0.5);
        x = h - (lambda_min(h) + eps) * s.unit();
      }
      const ElementThread e = make_element_thread(t, k, x);
      if (inductive_positive(t, e)) {
        rep.failures.push_back("non-positive element classified positive");
      } else {
        ++rep.nonpositive_elements;
        const SpectralDecomposition sd =
            spectral_decompose(e.deepest().flat());
        const ComplexVector v = sd.eigenvectors.col(sd.eigenvalues.size() - 1);
        const FunctionalThread f = pullback_thread(t, vector_state(deep, v));
        const double p = pairing(t, e, f).real();
        if (p < 0.0 && thread_positive(f)) ++rep.element_witnesses;
      }
    }
    // Non-positive functional: minimizing state at the first failing stage.
    {
      Functional fk = Functional::zero(deep);
      if (it % 5 == 0) {
        fk = Functional(deep, -deep->unit());
      } else {
        const ComplexMatrix h = random_hermitian(rng, deep->d());
        const double eps = uniform(rng, 1e-3, 0.5);
        fk = Functional(deep, h - (lambda_min(h) + eps) * deep->unit());
      }
      const FunctionalThread f = pullback_thread(t, fk);
      int failing = -1;
      for (int k = 0; k <= last && failing < 0; ++k) {
        if (positivity(f.entries[k]).decision == Decision::no) failing = k;
      }
      if (failing >= 0) {
        ++rep.nonpositive_functionals;
        const PositivityReport pr = positivity(f.entries[failing]);
        const ElementThread e = make_element_thread(t, failing, pr.witness);
        const double p = pairing(t, e, f).real();
        if (p < 0.0 && cone_member(*t.system(failing), e.element())) {
          ++rep.functional_witnesses;
        }
      }
    }
  }
  return rep;
}

bool GammaReport::passed() const {
  return injectivity_failures == 0 && max_reconstruction_residual <= 1e-9 &&
         order_disagreements == 0 && unit_failures == 0 &&
         complete_disagreements == 0 &&
         complete_witnesses == complete_nonpositive && failures.empty();
}

GammaReport verify_gamma(const Tower& t, int samples, int max_level, Rng& rng) {
  GammaReport rep;
  const int depth = t.depth();
  const SystemPtr& deep = t.system(depth - 1);

  std::vector<std::vector<ElementThread>> basis_threads(depth);
  for (int k = 0; k < depth; ++k)
    for (const auto& b : t.system(k)->basis())
      basis_threads[k].push_back(make_element_thread(t, k, b));

  // Functional on S_k induced by a thread through the pairing alone.
  auto induced = [&](int k, const FunctionalThread& f) {
    ComplexVector u(t.system(k)->dim());
    for (int i = 0; i < u.size(); ++i) u(i) = pairing(t, basis_threads[k][i], f);
    return Functional::from_coordinates(t.system(k), u);
  };

  // Injectivity: vanishing pairings force a vanishing thread.
  for (int it = 0; it < samples; ++it) {
    Functional fk = Functional::zero(deep);
    if (it % 4 == 1) {
      fk = random_complex_functional(deep, rng) * 1e-14;
    } else if (it % 4 >= 2) {
      fk = random_complex_functional(deep, rng);
    }
    const FunctionalThread f = pullback_thread(t, fk);
    double largest = 0.0;
    for (int k = 0; k < depth; ++k) {
      const Functional g = induced(k, f);
      largest = std::max(largest, g.coordinates().cwiseAbs().maxCoeff());
      rep.max_reconstruction_residual =
          std::max(rep.max_reconstruction_residual,
                   (g.canonical() - f.entries[k].canonical()).norm());
    }
    ++rep.injectivity_samples;
    if (largest <= 1e-12 && f.norm_sup > 1e-8) ++rep.injectivity_failures;
  }

  // Order correspondence at level 1.
  for (int it = 0; it < samples; ++it) {
    Functional fk = Functional::zero(deep);
    if (it % 2 == 0) {
      fk = Functional(deep, random_density(rng, deep->d(), uniform_int(rng, 1, deep->d())));
    } else {
      const ComplexMatrix h = random_hermitian(rng, deep->d());
      fk = Functional(deep, h + uniform(rng, 0.0, 1.2) * deep->unit());
    }
    const FunctionalThread f = pullback_thread(t, fk);
    bool thread_side = thread_positive(f);
    bool gamma_side = true;
    for (int k = 0; k < depth; ++k) {
      if (positivity(induced(k, f)).decision != Decision::yes) gamma_side = false;
    }
    ++rep.order_samples;
    if (thread_side != gamma_side) ++rep.order_disagreements;
    if (gamma_side) {
      for (int j = 0; j < 3; ++j) {
        const int k = uniform_int(rng, 0, depth - 1);
        const ElementThread e = make_element_thread(
            t, k, random_level_positive(*t.system(k), 1, rng, 0.0));
        if (pairing(t, e, f).real() < -1e-8) {
          rep.failures.push_back("positive thread pairs negatively");
        }
      }
    }
  }

  // Trace-state thread is an order unit.
  {
    const DualTower dt(t);
    const FunctionalThread unit = pullback_thread(t, dt.unit(depth - 1));
    for (int k = 0; k < depth; ++k) {
      if ((unit.entries[k].canonical() - dt.unit(k).canonical()).norm() > 1e-9) {
        rep.failures.push_back("trace states do not form a thread");
      }
    }
    DualRadiusOptions ro;
    ro.precision = 1e-3;
    for (int it = 0; it < samples; ++it) {
      const Functional g = random_hermitian_functional(deep, rng);
      const DualRadius r = dual_order_unit_radius(dt.unit(depth - 1), g, 1, ro);
      ++rep.unit_samples;
      if (r.status != RadiusStatus::found) {
        ++rep.unit_failures;
        continue;
      }
      const FunctionalThread diff =
          pullback_thread(t, dt.unit(depth - 1) * r.r - g);
      if (!thread_positive(diff)) ++rep.unit_failures;
    }
  }

  // Complete order correspondence via matrix functional threads.
  for (int n = 2; n <= max_level; ++n) {
    const int big = n * deep->d();
    for (int it = 0; it < samples; ++it) {
      ComplexMatrix w;
      if (it % 3 == 0) {
        w = random_density(rng, big);
      } else if (it % 3 == 1) {
        w = random_density(rng, big, uniform_int(rng, 1, big - 1));
      } else {
        const ComplexMatrix h = random_hermitian(rng, big);
        w = h - (lambda_min(h) + uniform(rng, 1e-3, 0.3)) *
                    ComplexMatrix::Identity(big, big);
      }
      std::vector<std::vector<Functional>> grid(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          grid[i].emplace_back(
              deep, w.block(j * deep->d(), i * deep->d(), deep->d(), deep->d()));
      const MatrixFunctionalThread f = pullback_thread(t, MatrixFunctional(grid));

      std::vector<std::vector<FunctionalThread>> entry(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          FunctionalThread ft;
          for (int k = 0; k < depth; ++k) ft.entries.push_back(f.entries[k](i, j));
          entry[i].push_back(std::move(ft));
        }
      }
      bool thread_cone = true;
      int failing = -1;
      bool agree = true;
      for (int k = 0; k < depth; ++k) {
        const Decision a = is_cp(f.entries[k]).decision;
        std::vector<std::vector<Functional>> g(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) g[i].push_back(induced(k, entry[i][j]));
        const Decision b = is_cp(MatrixFunctional(g)).decision;
        if (a != b) agree = false;
        if (a != Decision::yes) {
          thread_cone = false;
          if (failing < 0 && a == Decision::no) failing = k;
        }
      }
      ++rep.complete_samples;
      if (!agree) ++rep.complete_disagreements;
      if (!thread_cone && failing >= 0) {
        ++rep.complete_nonpositive;
        const LevelElement x = separating_element(
            *t.system(failing), n, hermitian_part(f.entries[failing].choi()));
        const ElementThread e = make_element_thread(t, failing, x);
        if (pairing(t, e, f).real() < 0.0) ++rep.complete_witnesses;
      }
    }
  }
  return rep;
}

}  // namespace opsys
