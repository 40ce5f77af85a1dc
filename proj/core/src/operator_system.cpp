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

#include "opsys/operator_system.hpp"

#include <cmath>
#include <string>

#include "opsys/errors.hpp"

namespace opsys {

namespace {

Eigen::Map<const ComplexVector> as_vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace().real();
}

// Orthonormal basis of real diagonal n x n matrices, first element I/sqrt(n).
std::vector<RealVector> diagonal_basis(int n) {
  std::vector<RealVector> out;
  out.push_back(RealVector::Constant(n, 1.0 / std::sqrt(double(n))));
  for (int k = 1; k < n; ++k) {
    RealVector v = RealVector::Zero(n);
    for (int i = 0; i < k; ++i) v(i) = 1.0;
    v(k) = -double(k);
    out.push_back(v / std::sqrt(double(k) * (k + 1)));
  }
  return out;
}

}  // namespace

OperatorSystem OperatorSystem::make(
    const std::vector<ComplexMatrix>& generators, int d) {
  if (d <= 0) throw DimensionError("make_operator_system: d must be positive");
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) {
      throw DimensionError(
          "make_operator_system: generator of size " +
          std::to_string(g.rows()) + "x" + std::to_string(g.cols()) +
          " in M_" + std::to_string(d));
    }
  }
  std::vector<ComplexMatrix> candidates;
  candidates.push_back(ComplexMatrix::Identity(d, d));
  for (const auto& g : generators) {
    candidates.push_back(hermitian_part(g));
    candidates.push_back(skew_part(g));
  }

  OperatorSystem s;
  s.d_ = d;
  s.generators_ = generators;
  for (const auto& c : candidates) {
    const double scale = std::max(1.0, c.norm());
    ComplexMatrix v = c;
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : s.basis_) v -= real_inner(b, v) * b;
    }
    const double nv = v.norm();
    if (nv > kRankTol * scale) s.basis_.push_back(hermitian_part(v / nv));
  }
  s.build_stack();
  return s;
}

OperatorSystem OperatorSystem::from_orthonormal_basis(
    int d, std::vector<ComplexMatrix> basis,
    std::vector<ComplexMatrix> generators) {
  OperatorSystem s;
  s.d_ = d;
  s.basis_ = std::move(basis);
  s.generators_ = std::move(generators);
  s.build_stack();
  return s;
}

void OperatorSystem::build_stack() {
  stack_.resize(static_cast<Eigen::Index>(d_) * d_, dim());
  for (int i = 0; i < dim(); ++i) stack_.col(i) = as_vec(basis_[i]);
}

ComplexVector OperatorSystem::coordinates(const ComplexMatrix& x) const {
  if (x.rows() != d_ || x.cols() != d_) {
    throw DimensionError("coordinates: element is not " + std::to_string(d_) +
                         "x" + std::to_string(d_));
  }
  return stack_.adjoint() * as_vec(x);
}

ComplexMatrix OperatorSystem::from_coordinates(const ComplexVector& c) const {
  ComplexVector v = stack_ * c;
  return Eigen::Map<ComplexMatrix>(v.data(), d_, d_);
}

ComplexMatrix OperatorSystem::from_coordinates(const RealVector& c) const {
  return from_coordinates(ComplexVector(c.cast<Complex>()));
}

ComplexMatrix OperatorSystem::project(const ComplexMatrix& x) const {
  if (is_full()) return x;
  return from_coordinates(coordinates(x));
}

double OperatorSystem::residual(const ComplexMatrix& x) const {
  if (x.rows() != d_ || x.cols() != d_) return INFINITY;
  if (is_full()) return 0.0;
  return (x - project(x)).norm();
}

OperatorSystem make_operator_system(
    const std::vector<ComplexMatrix>& generators, int d) {
  return OperatorSystem::make(generators, d);
}

SystemPtr share(OperatorSystem s) {
  return std::make_shared<const OperatorSystem>(std::move(s));
}

namespace {

int parse_dim(const std::string& name, const std::string& prefix) {
  const std::string tail = name.substr(prefix.size());
  std::size_t pos = 0;
  int d = 0;
  try {
    d = std::stoi(tail, &pos);
  } catch (const std::exception&) {
    throw ParseError("builtin system '" + name + "': bad dimension");
  }
  if (pos != tail.size() || d <= 0 || d > 64) {
    throw ParseError("builtin system '" + name + "': bad dimension");
  }
  return d;
}

}  // namespace

OperatorSystem builtin_system(const std::string& name) {
  if (name == "pauli-span") {
    return make_operator_system({pauli_x(), pauli_y()}, 2);
  }
  if (name.rfind("full:", 0) == 0) {
    const int d = parse_dim(name, "full:");
    std::vector<ComplexMatrix> gens;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) gens.push_back(matrix_unit(d, i, j));
    return make_operator_system(gens, d);
  }
  if (name.rfind("diag:", 0) == 0) {
    const int d = parse_dim(name, "diag:");
    std::vector<ComplexMatrix> gens;
    for (int i = 0; i < d; ++i) gens.push_back(matrix_unit(d, i, i));
    return make_operator_system(gens, d);
  }
  if (name.rfind("toeplitz:", 0) == 0) {
    const int d = parse_dim(name, "toeplitz:");
    ComplexMatrix shift = ComplexMatrix::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) shift(i, i + 1) = 1.0;
    std::vector<ComplexMatrix> gens;
    ComplexMatrix power = ComplexMatrix::Identity(d, d);
    for (int k = 1; k < d; ++k) {
      power = power * shift;
      gens.push_back(power);
    }
    return make_operator_system(gens, d);
  }
  throw ParseError("unknown builtin system '" + name + "'");
}

OperatorSystem amplify(const OperatorSystem& s, int n) {
  if (n <= 0) throw DimensionError("amplify: level must be positive");
  if (n == 1) return s;
  const int d = s.d();
  const int D = n * d;
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n) * n * s.dim());
  // Diagonal blocks: D_k tensor B_b, with D_0 = I/sqrt(n) so that the first
  // element is the normalized unit.
  const auto diag = diagonal_basis(n);
  for (int b = 0; b < s.dim(); ++b) {
    for (int k = 0; k < n; ++k) {
      ComplexMatrix dk = ComplexMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) dk(i, i) = diag[k](i);
      basis.push_back(kron(dk, s.basis(b)));
    }
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (int b = 0; b < s.dim(); ++b) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        ComplexMatrix sym = ComplexMatrix::Zero(n, n);
        sym(i, j) = r;
        sym(j, i) = r;
        ComplexMatrix anti = ComplexMatrix::Zero(n, n);
        anti(i, j) = Complex(0, r);
        anti(j, i) = Complex(0, -r);
        basis.push_back(kron(sym, s.basis(b)));
        basis.push_back(kron(anti, s.basis(b)));
      }
    }
  }
  return OperatorSystem::from_orthonormal_basis(D, std::move(basis));
}

LevelElement::LevelElement(int n, int d, ComplexMatrix flat)
    : n_(n), d_(d), flat_(std::move(flat)) {
  if (n <= 0 || d <= 0 || flat_.rows() != n * d || flat_.cols() != n * d) {
    throw DimensionError("LevelElement: flat matrix is not (nd)x(nd)");
  }
}

LevelElement LevelElement::level1(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionError("LevelElement: not square");
  return LevelElement(1, static_cast<int>(x.rows()), x);
}

LevelElement LevelElement::from_grid(
    const std::vector<std::vector<ComplexMatrix>>& grid) {
  const int n = static_cast<int>(grid.size());
  if (n == 0 || grid[0].empty()) throw DimensionError("LevelElement: empty grid");
  const int d = static_cast<int>(grid[0][0].rows());
  ComplexMatrix flat(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(grid[i].size()) != n) {
      throw DimensionError("LevelElement: grid is not square");
    }
    for (int j = 0; j < n; ++j) {
      if (grid[i][j].rows() != d || grid[i][j].cols() != d) {
        throw DimensionError("LevelElement: blocks have mixed sizes");
      }
      flat.block(i * d, j * d, d, d) = grid[i][j];
    }
  }
  return LevelElement(n, d, std::move(flat));
}

LevelElement LevelElement::diagonal(int n, const ComplexMatrix& e) {
  return LevelElement(n, static_cast<int>(e.rows()),
                      kron(ComplexMatrix::Identity(n, n), e));
}

ComplexMatrix LevelElement::block(int i, int j) const {
  return flat_.block(i * d_, j * d_, d_, d_);
}

std::vector<std::vector<ComplexMatrix>> LevelElement::grid() const {
  std::vector<std::vector<ComplexMatrix>> g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) g[i].push_back(block(i, j));
  return g;
}

double subspace_residual(const OperatorSystem& s, const LevelElement& x) {
  if (x.d() != s.d()) return INFINITY;
  double worst = 0.0;
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j)
      worst = std::max(worst, s.residual(x.block(i, j)));
  return worst;
}

bool subspace_member(const OperatorSystem& s, const LevelElement& x,
                     double tol) {
  return subspace_residual(s, x) <= tol;
}

bool cone_member(const OperatorSystem& s, const LevelElement& x, double tol) {
  if (!subspace_member(s, x, tol)) return false;
  if (asymmetry(x.flat()) > tol) return false;
  return lambda_min(hermitian_part(x.flat())) >= -tol;
}

std::optional<double> order_unit_radius_level(const OperatorSystem& s,
                                              const ComplexMatrix& e,
                                              const LevelElement& x,
                                              const RadiusOptions& opts) {
  const double asym = asymmetry(x.flat());
  if (asym > kMembershipTol * std::max(1.0, x.flat().norm())) {
    throw NotHermitianError("order_unit_radius_level: x is not Hermitian",
                            asym);
  }
  if (e.rows() != s.d() || x.d() != s.d()) {
    throw DimensionError("order_unit_radius_level: ambient dimension mismatch");
  }
  if (!subspace_member(s, x, opts.tol) || !s.contains(e, opts.tol)) {
    return std::nullopt;
  }
  const ComplexMatrix big_e = kron(ComplexMatrix::Identity(x.n(), x.n()), e);
  const ComplexMatrix hx = hermitian_part(x.flat());
  auto dominates = [&](double r) {
    return lambda_min(hermitian_part(r * big_e) - hx) >= -opts.tol;
  };
  if (dominates(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!dominates(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi >= opts.r_max) {
      if (!dominates(opts.r_max)) return std::nullopt;
      hi = opts.r_max;
      break;
    }
  }
  while (hi - lo > opts.precision) {
    const double mid = 0.5 * (lo + hi);
    if (dominates(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

MatrixOrderUnitReport is_matrix_order_unit(const OperatorSystem& s,
                                           const ComplexMatrix& e,
                                           int max_level, Rng& rng,
                                           int samples_per_level,
                                           const RadiusOptions& opts) {
  MatrixOrderUnitReport report;
  report.is_unit = true;
  auto record = [&](LevelRadii& lr, const LevelElement& x) {
    auto r = order_unit_radius_level(s, e, x, opts);
    lr.radii.push_back(r);
    ++lr.samples;
    if (r) {
      ++lr.dominated;
      lr.max_radius = std::max(lr.max_radius, *r);
    } else {
      report.is_unit = false;
      if (!report.counterexample) report.counterexample = x;
    }
  };
  for (int n = 1; n <= max_level; ++n) {
    LevelRadii lr;
    lr.level = n;
    if (n == 1) {
      for (const auto& b : s.basis()) {
        record(lr, LevelElement::level1(b));
        record(lr, LevelElement::level1(-b));
      }
    }
    for (int k = 0; k < samples_per_level; ++k) {
      record(lr, random_level_hermitian(s, n, rng));
    }
    report.levels.push_back(std::move(lr));
  }
  return report;
}

ComplexMatrix random_element(const OperatorSystem& s, Rng& rng) {
  ComplexVector c(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    const double re = gaussian(rng);
    const double im = gaussian(rng);
    c(i) = Complex(re, im);
  }
  return s.from_coordinates(ComplexVector(c / c.norm()));
}

ComplexMatrix random_hermitian_element(const OperatorSystem& s, Rng& rng) {
  RealVector c(s.dim());
  for (int i = 0; i < s.dim(); ++i) c(i) = gaussian(rng);
  return hermitian_part(s.from_coordinates(RealVector(c / c.norm())));
}

LevelElement random_level_element(const OperatorSystem& s, int n, Rng& rng) {
  std::vector<std::vector<ComplexMatrix>> grid(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) grid[i].push_back(random_element(s, rng));
  return LevelElement::from_grid(grid);
}

LevelElement random_level_hermitian(const OperatorSystem& s, int n, Rng& rng) {
  LevelElement x = random_level_element(s, n, rng);
  return LevelElement(n, s.d(), hermitian_part(x.flat()));
}

LevelElement random_level_positive(const OperatorSystem& s, int n, Rng& rng,
                                   double shift) {
  LevelElement h = random_level_hermitian(s, n, rng);
  const double lm = lambda_min(h.flat());
  ComplexMatrix flat = h.flat();
  flat.diagonal().array() += Complex(shift - lm, 0.0);
  return LevelElement(n, s.d(), hermitian_part(flat));
}

OperatorSystem random_system(Rng& rng, int d, int generators) {
  std::vector<ComplexMatrix> gens;
  for (int k = 0; k < generators; ++k) gens.push_back(random_gaussian(rng, d, d));
  return make_operator_system(gens, d);
}

}  // namespace opsys
