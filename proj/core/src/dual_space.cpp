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

#include "opsys/dual_space.hpp"

#include <cmath>

#include "opsys/errors.hpp"

namespace opsys {

const char* to_string(Decision d) {
  switch (d) {
    case Decision::yes:
      return "yes";
    case Decision::no:
      return "no";
    case Decision::undecided:
      return "undecided";
  }
  return "undecided";
}

const char* to_string(RadiusStatus s) {
  switch (s) {
    case RadiusStatus::found:
      return "found";
    case RadiusStatus::none:
      return "none";
    case RadiusStatus::undecided:
      return "undecided";
  }
  return "undecided";
}

// ---------------------------------------------------------------- Functional

Functional::Functional(SystemPtr s, const ComplexMatrix& riesz)
    : s_(std::move(s)), riesz_(riesz) {
  if (!s_) throw Error("Functional: null system");
  if (riesz.rows() != s_->d() || riesz.cols() != s_->d()) {
    throw DimensionError("Functional: Riesz matrix has wrong size");
  }
  coords_ = s_->coordinates(riesz_);
  canonical_ = s_->is_full() ? riesz_ : s_->from_coordinates(coords_);
}

Functional Functional::from_coordinates(SystemPtr s, const ComplexVector& u) {
  if (u.size() != s->dim()) {
    throw DimensionError("Functional: coordinate vector has wrong length");
  }
  return Functional(s, s->from_coordinates(u));
}

Functional Functional::zero(SystemPtr s) {
  const int d = s->d();
  return Functional(std::move(s), ComplexMatrix::Zero(d, d));
}

Complex Functional::eval(const ComplexMatrix& x) const {
  const double r = s_->residual(x);
  if (r > kMembershipTol) {
    throw MembershipError("eval: argument is not in the functional's system", r);
  }
  return (canonical_ * x).trace();
}

Functional Functional::adjoint() const {
  return Functional(s_, riesz_.adjoint());
}

bool Functional::is_hermitian(double tol) const {
  return coords_.imag().cwiseAbs().maxCoeff() <=
         tol * std::max(1.0, coords_.norm());
}

Functional Functional::operator+(const Functional& o) const {
  return Functional(s_, canonical_ + o.canonical_);
}

Functional Functional::operator-(const Functional& o) const {
  return Functional(s_, canonical_ - o.canonical_);
}

Functional Functional::operator*(Complex c) const {
  return Functional(s_, c * canonical_);
}

Complex eval(const Functional& f, const ComplexMatrix& x) { return f.eval(x); }

Functional vector_state(SystemPtr s, const ComplexVector& v) {
  const ComplexVector u = v / v.norm();
  return Functional(std::move(s), u * u.adjoint());
}

// ---------------------------------------------------------- MatrixFunctional

MatrixFunctional::MatrixFunctional(std::vector<std::vector<Functional>> grid)
    : grid_(std::move(grid)) {
  const std::size_t n = grid_.size();
  if (n == 0) throw DimensionError("MatrixFunctional: empty grid");
  const OperatorSystem* s = grid_[0][0].system().get();
  for (const auto& row : grid_) {
    if (row.size() != n) throw DimensionError("MatrixFunctional: grid not square");
    for (const auto& f : row) {
      const OperatorSystem* t = f.system().get();
      if (t != s && (t->d() != s->d() || t->dim() != s->dim())) {
        throw ValidationError("same-system",
                              "matrix functional mixes operator systems");
      }
    }
  }
}

MatrixFunctional MatrixFunctional::diagonal(int n, const Functional& f) {
  std::vector<std::vector<Functional>> g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g[i].push_back(i == j ? f : Functional::zero(f.system()));
  return MatrixFunctional(std::move(g));
}

ComplexMatrix MatrixFunctional::apply(const ComplexMatrix& x) const {
  ComplexMatrix out(n(), n());
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) out(i, j) = grid_[i][j].eval(x);
  return out;
}

ComplexMatrix MatrixFunctional::choi() const {
  const int d = system()->d();
  ComplexMatrix w = ComplexMatrix::Zero(n() * d, n() * d);
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j)
      w.block(j * d, i * d, d, d) = grid_[i][j].canonical();
  return w;
}

bool MatrixFunctional::is_hermitian(double tol) const {
  double scale = 1.0;
  for (const auto& row : grid_)
    for (const auto& f : row) scale = std::max(scale, f.coordinates().norm());
  for (int i = 0; i < n(); ++i) {
    for (int j = i; j < n(); ++j) {
      const ComplexVector diff =
          grid_[j][i].coordinates() - grid_[i][j].coordinates().conjugate();
      if (diff.cwiseAbs().maxCoeff() > tol * scale) return false;
    }
  }
  return true;
}

namespace {

MatrixFunctional combine(const MatrixFunctional& a, const MatrixFunctional& b,
                         Complex sb) {
  if (a.n() != b.n()) throw DimensionError("MatrixFunctional: level mismatch");
  std::vector<std::vector<Functional>> g(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) g[i].push_back(a(i, j) + b(i, j) * sb);
  return MatrixFunctional(std::move(g));
}

}  // namespace

MatrixFunctional MatrixFunctional::operator+(const MatrixFunctional& o) const {
  return combine(*this, o, 1.0);
}

MatrixFunctional MatrixFunctional::operator-(const MatrixFunctional& o) const {
  return combine(*this, o, -1.0);
}

MatrixFunctional MatrixFunctional::operator*(Complex c) const {
  std::vector<std::vector<Functional>> g(n());
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < n(); ++j) g[i].push_back(grid_[i][j] * c);
  return MatrixFunctional(std::move(g));
}

// ---------------------------------------------------------------- positivity

PositivityReport positivity(const Functional& f, double tol) {
  PositivityReport out;
  const OperatorSystem& s = *f.system();
  if (!f.is_hermitian(1e-9)) {
    // f takes a non-real value on some Hermitian basis element B; B + |B| I is
    // positive and inherits the imaginary part.
    Eigen::Index k = 0;
    f.coordinates().imag().cwiseAbs().maxCoeff(&k);
    ComplexMatrix x = s.basis(static_cast<int>(k)) +
                      hermitian_norm(s.basis(static_cast<int>(k))) * s.unit();
    out.decision = Decision::no;
    out.witness = x / x.trace().real();
    out.lower = out.upper = -std::abs(f.coordinates()(k).imag());
    return out;
  }
  SectionOptions so;
  so.threshold = -tol;
  const SectionResult r = section_minimize(s, f.canonical(), so);
  out.lower = r.lower;
  out.upper = r.upper;
  out.witness = r.minimizer;
  out.exact = r.exact;
  if (r.lower >= -tol) {
    out.decision = Decision::yes;
  } else if (r.upper < -tol) {
    out.decision = Decision::no;
  } else {
    out.decision = Decision::undecided;
  }
  return out;
}

bool is_positive_functional(const Functional& f, double tol) {
  return positivity(f, tol).decision == Decision::yes;
}

// ---------------------------------------------------------------------- CP

FeasibilityProblem choi_problem(const MatrixFunctional& mf, double tol,
                                int max_iter) {
  const OperatorSystem& s = *mf.system();
  const int n = mf.n();
  FeasibilityProblem prob;
  prob.dim = n * s.d();
  prob.tol = tol;
  prob.max_iter = max_iter;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ComplexVector& z = mf(i, j).coordinates();
      for (int b = 0; b < s.dim(); ++b) {
        const ComplexMatrix x = kron(matrix_unit(n, i, j), s.basis(b));
        prob.constraints.push_back({HermitianMatrix(x), z(b).real()});
        if (i != j) {
          prob.constraints.push_back(
              {HermitianMatrix(skew_part(x)), z(b).imag()});
        } else if (std::abs(z(b).imag()) > 0.0) {
          // Diagonal blocks of a Hermitian W pair to real numbers only.
          prob.constraints.push_back(
              {HermitianMatrix::zero(prob.dim), z(b).imag()});
        }
      }
    }
  }
  return prob;
}

CpVerdict is_cp(const MatrixFunctional& mf, const CpOptions& opts) {
  CpVerdict out;
  const OperatorSystem& s = *mf.system();
  if (s.is_full() && !opts.force_solver) {
    if (!mf.is_hermitian(1e-9)) {
      out.decision = Decision::no;
      out.route = "hermiticity";
      return out;
    }
    out.route = "choi-eigenvalue";
    out.choi_lambda_min = lambda_min(hermitian_part(mf.choi()));
    out.decision =
        out.choi_lambda_min >= -opts.tol ? Decision::yes : Decision::no;
    return out;
  }
  out.route = "dykstra";
  FeasibilityProblem prob = choi_problem(mf, opts.tol, opts.max_iter);
  if (opts.warm_start && mf.is_hermitian(1e-9)) {
    SectionOptions so;
    so.threshold = 0.0;
    const SectionResult sec =
        section_minimize(amplify(s, mf.n()), hermitian_part(mf.choi()), so);
    prob.start = HermitianMatrix(sec.certificate);
  }
  out.solver = dykstra_solve(prob);
  switch (out.solver.status) {
    case FeasibilityStatus::feasible:
      out.decision = Decision::yes;
      break;
    case FeasibilityStatus::infeasible:
      out.decision = Decision::no;
      break;
    case FeasibilityStatus::undecided:
      out.decision = Decision::undecided;
      break;
  }
  return out;
}

// ------------------------------------------------------------------- states

Functional faithful_state(SystemPtr s) {
  const int d = s->d();
  return Functional(std::move(s),
                    ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

Functional series_state(const std::vector<Functional>& states) {
  if (states.empty()) throw Error("series_state: no states given");
  ComplexMatrix acc = ComplexMatrix::Zero(states[0].system()->d(),
                                          states[0].system()->d());
  double weight = 0.5;
  double total = 0.0;
  for (const auto& f : states) {
    acc += weight * f.canonical();
    total += weight;
    weight *= 0.5;
  }
  return Functional(states[0].system(), acc / total);
}

bool is_faithful(const Functional& f, double tol) {
  if (!f.is_hermitian(1e-9)) return false;
  SectionOptions so;
  so.threshold = tol;
  const SectionResult r = section_minimize(*f.system(), f.canonical(), so);
  return r.lower > tol;
}

// ------------------------------------------------------------------- radius

DualRadius dual_order_unit_radius(const Functional& delta,
                                  const MatrixFunctional& g,
                                  const DualRadiusOptions& opts) {
  if (!g.is_hermitian(1e-9)) {
    throw NotHermitianError("dual_order_unit_radius: g is not Hermitian", 0.0);
  }
  const int n = g.n();
  const MatrixFunctional unit = MatrixFunctional::diagonal(n, delta);
  DualRadius out;
  Decision last = Decision::no;
  auto pass = [&](double r) {
    ++out.evaluations;
    if (n == 1) {
      last = positivity(delta * r - g(0, 0), opts.tol).decision;
    } else {
      last = is_cp(unit * r - g, opts.cp).decision;
    }
    if (last == Decision::undecided) ++out.undecided_evaluations;
    return last == Decision::yes;
  };

  double lo = 0.0;
  double hi = 1.0;
  if (pass(1.0)) {
    double cand = 0.0;
    for (;;) {
      if (!pass(cand)) {
        lo = cand;
        break;
      }
      hi = cand;
      cand = cand == 0.0 ? -1.0 : 2.0 * cand;
      if (cand < -opts.r_max) {
        out.status = RadiusStatus::found;
        out.r = hi;
        return out;
      }
    }
  } else {
    lo = 1.0;
    hi = 2.0;
    while (!pass(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi >= opts.r_max) {
        if (!pass(opts.r_max)) {
          out.status = last == Decision::undecided ? RadiusStatus::undecided
                                                   : RadiusStatus::none;
          return out;
        }
        hi = opts.r_max;
        break;
      }
    }
  }
  while (hi - lo > opts.precision) {
    const double mid = 0.5 * (lo + hi);
    if (pass(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.status = RadiusStatus::found;
  out.r = hi;
  return out;
}

DualRadius dual_order_unit_radius(const Functional& delta, const Functional& g,
                                  int level, const DualRadiusOptions& opts) {
  return dual_order_unit_radius(delta, MatrixFunctional::diagonal(level, g),
                                opts);
}

// ------------------------------------------------------------- equivalences

bool EquivalenceReport::order_unit() const {
  return faithful && !levels.empty() && levels[0].found == levels[0].samples;
}

bool EquivalenceReport::matrix_order_unit() const {
  if (!faithful) return false;
  for (const auto& l : levels)
    if (l.found != l.samples) return false;
  return true;
}

EquivalenceReport verify_dual_unit_equivalences(const Functional& delta,
                                                int max_level, int samples,
                                                Rng& rng,
                                                const EquivalenceOptions& opts) {
  EquivalenceReport rep;
  const SystemPtr& s = delta.system();
  SectionOptions so;
  so.threshold = 1e-9;
  const SectionResult sec = section_minimize(*s, delta.canonical(), so);
  rep.faithful = delta.is_hermitian(1e-9) && sec.lower > 1e-9;
  if (!rep.faithful) {
    // g(x) = tr(x^2) > 0 while delta(x) ~ 0 at the section minimizer x.
    rep.undominated = Functional(s, sec.minimizer);
  }

  DualRadiusOptions ro;
  ro.precision = opts.level_precision;
  for (int n = 1; n <= max_level; ++n) {
    EquivalenceLevel lvl;
    lvl.level = n;
    auto run = [&](const MatrixFunctional& g) {
      const DualRadius r = dual_order_unit_radius(delta, g, ro);
      ++lvl.samples;
      if (r.status == RadiusStatus::found) {
        ++lvl.found;
        lvl.max_radius = std::max(lvl.max_radius, r.r);
      } else if (r.status == RadiusStatus::undecided) {
        ++lvl.undecided;
      }
    };
    if (n == 1 && rep.undominated) {
      run(MatrixFunctional::diagonal(1, *rep.undominated));
    }
    for (int k = 0; k < samples; ++k) {
      run(n == 1 ? MatrixFunctional::diagonal(
                       1, random_hermitian_functional(s, rng))
                 : random_hermitian_matrix_functional(s, n, rng));
    }
    rep.levels.push_back(lvl);
  }

  // Archimedean direction: shifts of boundary functionals g + r* delta.
  static const double kShifts[] = {0.0,       std::ldexp(1.0, -25),
                                   -std::ldexp(1.0, -25), -std::ldexp(1.0, -22),
                                   -1e-3,     1e-3};
  DualRadiusOptions fine;
  fine.precision = 1e-10;
  for (int k = 0; k < samples; ++k) {
    const Functional g = random_hermitian_functional(s, rng);
    const DualRadius r = dual_order_unit_radius(delta, -g, 1, fine);
    if (r.status != RadiusStatus::found) continue;
    const Functional f = g + delta * (r.r + kShifts[k % 6]);
    ++rep.archimedean_samples;
    bool premise = true;
    for (int j = 1; j <= opts.archimedean_steps && premise; ++j) {
      premise = is_positive_functional(delta * std::ldexp(1.0, -j) + f);
    }
    if (!premise) continue;
    ++rep.archimedean_premise;
    if (!is_positive_functional(f, opts.archimedean_tol)) {
      ++rep.archimedean_violations;
      rep.counterexamples.push_back(f);
    }
  }
  return rep;
}

// ------------------------------------------------------------------ Paulsen

PaulsenSystem paulsen_system(const std::vector<ComplexMatrix>& v_basis, int d) {
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix zero = ComplexMatrix::Zero(d, d);
  std::vector<ComplexMatrix> gens;
  gens.push_back(direct_sum(id, zero));
  gens.push_back(direct_sum(zero, id));
  for (const auto& x : v_basis) {
    if (x.rows() != d || x.cols() != d) {
      throw DimensionError("paulsen_system: operator space element has wrong size");
    }
    ComplexMatrix corner = ComplexMatrix::Zero(2 * d, 2 * d);
    corner.topRightCorner(d, d) = x;
    gens.push_back(corner);
  }
  SystemPtr s = share(make_operator_system(gens, 2 * d));
  Functional unit(s, ComplexMatrix::Identity(2 * d, 2 * d) / double(d));
  return {s, unit};
}

// ---------------------------------------------------------- density transfer

Functional restrict(const Functional& f, SystemPtr t) {
  const OperatorSystem& s = *f.system();
  for (const auto& b : t->basis()) {
    const double r = s.residual(b);
    if (r > kMembershipTol) {
      throw MembershipError("restrict: target is not a subsystem", r);
    }
  }
  return Functional(std::move(t), f.canonical());
}

Functional extend_unique(const Functional& g, SystemPtr s) {
  const OperatorSystem& t = *g.system();
  if (t.d() != s->d() || t.dim() != s->dim()) {
    throw MembershipError("extend_unique: subsystem does not span the system",
                          double(s->dim() - t.dim()));
  }
  for (const auto& b : s->basis()) {
    const double r = t.residual(b);
    if (r > kMembershipTol) {
      throw MembershipError("extend_unique: subsystem does not span the system",
                            r);
    }
  }
  return Functional(std::move(s), g.canonical());
}

// ------------------------------------------------------------------ samplers

Functional random_hermitian_functional(SystemPtr s, Rng& rng) {
  RealVector u(s->dim());
  for (int i = 0; i < s->dim(); ++i) u(i) = gaussian(rng);
  u /= u.norm();
  return Functional::from_coordinates(std::move(s),
                                      ComplexVector(u.cast<Complex>()));
}

MatrixFunctional random_hermitian_matrix_functional(SystemPtr s, int n,
                                                    Rng& rng) {
  std::vector<std::vector<Functional>> g(
      n, std::vector<Functional>(n, Functional::zero(s)));
  for (int i = 0; i < n; ++i) {
    g[i][i] = random_hermitian_functional(s, rng);
    for (int j = i + 1; j < n; ++j) {
      ComplexVector u(s->dim());
      for (int b = 0; b < s->dim(); ++b) {
        const double re = gaussian(rng);
        const double im = gaussian(rng);
        u(b) = Complex(re, im);
      }
      u /= u.norm();
      g[i][j] = Functional::from_coordinates(s, u);
      g[j][i] = g[i][j].adjoint();
    }
  }
  return MatrixFunctional(std::move(g));
}

}  // namespace opsys
