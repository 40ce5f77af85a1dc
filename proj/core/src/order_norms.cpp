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

#include "opsys/order_norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "opsys/errors.hpp"

namespace opsys {

namespace {

void require_member(const OperatorSystem& s, const ComplexMatrix& v,
                    const char* where) {
  if (v.rows() != s.d() || v.cols() != s.d()) {
    throw DimensionError(std::string(where) + ": element has wrong size");
  }
  const double r = s.residual(v);
  if (r > kMembershipTol) {
    throw MembershipError(std::string(where) + ": element is not in S", r);
  }
}

bool is_zero(const ComplexMatrix& v) { return v.norm() == 0.0; }

double support(const ComplexMatrix& v, double theta) {
  return lambda_max(hermitian_part(std::polar(1.0, theta) * v));
}

double golden_max(const ComplexMatrix& v, double a, double b, double* arg) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = support(v, x1);
  double f2 = support(v, x2);
  for (int it = 0; it < 48; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = support(v, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = support(v, x1);
    }
  }
  if (f1 >= f2) {
    *arg = x1;
    return f1;
  }
  *arg = x2;
  return f2;
}

// Projection onto { (h_j) : h_j Hermitian in S, sum_j e^{i theta_j} h_j = v },
// done coordinate-wise in the Hermitian basis of S.
class PhaseConstraint {
 public:
  PhaseConstraint(const OperatorSystem& s, const ComplexMatrix& v, int phases)
      : s_(s), p_(phases), m_(2, phases), rhs_(2, s.dim()) {
    for (int j = 0; j < p_; ++j) {
      const double t = GaugeDecomposition::phase(j, p_);
      m_(0, j) = std::cos(t);
      m_(1, j) = std::sin(t);
    }
    gram_inv_ = (m_ * m_.transpose()).inverse();
    const ComplexVector c = s.coordinates(v);
    rhs_.row(0) = c.real().transpose();
    rhs_.row(1) = c.imag().transpose();
  }

  std::vector<ComplexMatrix> project(const std::vector<ComplexMatrix>& h) const {
    RealMatrix x(p_, s_.dim());
    for (int j = 0; j < p_; ++j) {
      x.row(j) = s_.coordinates(h[j]).real().transpose();
    }
    const RealMatrix r = m_ * x - rhs_;
    x -= m_.transpose() * (gram_inv_ * r);
    std::vector<ComplexMatrix> out(p_);
    for (int j = 0; j < p_; ++j) {
      out[j] = hermitian_part(s_.from_coordinates(RealVector(x.row(j).transpose())));
    }
    return out;
  }

 private:
  const OperatorSystem& s_;
  int p_;
  RealMatrix m_;
  Eigen::Matrix2d gram_inv_;
  RealMatrix rhs_;
};

double gauge_value(const std::vector<ComplexMatrix>& parts) {
  double total = 0.0;
  for (const auto& h : parts) {
    if (h.norm() > 0.0) total += hermitian_norm(h);
  }
  return total;
}

// prox of gamma * ||.||_op on Hermitian matrices.
ComplexMatrix prox_op_norm(const ComplexMatrix& z, double gamma) {
  if (z.norm() == 0.0) return z;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(z));
  const RealVector lam = es.eigenvalues();
  const RealVector shrunk = lam - project_l1_ball(lam, gamma);
  return es.eigenvectors() * shrunk.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

RealVector project_l1_ball(const RealVector& x, double radius) {
  if (x.cwiseAbs().sum() <= radius) return x;
  std::vector<double> u(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) u[i] = std::abs(x(i));
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumsum += u[k];
    const double t = (cumsum - radius) / double(k + 1);
    if (u[k] > t) theta = t;
  }
  RealVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::max(std::abs(x(i)) - theta, 0.0);
    out(i) = x(i) >= 0 ? a : -a;
  }
  return out;
}

double order_norm_h(const OperatorSystem& s, const ComplexMatrix& v) {
  require_member(s, v, "order_norm_h");
  const double asym = asymmetry(v);
  if (asym > kMembershipTol * std::max(1.0, v.norm())) {
    throw NotHermitianError("order_norm_h: element is not Hermitian", asym);
  }
  return hermitian_norm(hermitian_part(v));
}

MinNormResult min_order_norm_detail(const OperatorSystem& s,
                                    const ComplexMatrix& v,
                                    const MinNormOptions& opts) {
  require_member(s, v, "min_order_norm");
  MinNormResult out;
  if (is_zero(v)) return out;
  const int g = std::max(opts.grid, 4);
  const double step = 2.0 * std::numbers::pi / g;
  std::vector<double> vals(g);
  for (int k = 0; k < g; ++k) vals[k] = support(v, k * step);

  int best = int(std::max_element(vals.begin(), vals.end()) - vals.begin());
  out.value = vals[best];
  out.theta = best * step;

  std::vector<int> peaks;
  for (int k = 0; k < g; ++k) {
    const double prev = vals[(k + g - 1) % g];
    const double next = vals[(k + 1) % g];
    if (vals[k] >= prev && vals[k] >= next) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](int a, int b) { return vals[a] > vals[b]; });
  if (static_cast<int>(peaks.size()) > opts.refine) peaks.resize(opts.refine);
  for (int k : peaks) {
    double arg = 0.0;
    const double f = golden_max(v, (k - 1) * step, (k + 1) * step, &arg);
    if (f > out.value) {
      out.value = f;
      out.theta = arg;
    }
  }
  // Every point of the numerical range is within pi/G of a grid direction.
  out.grid_error = out.value * (1.0 / std::cos(std::numbers::pi / g) - 1.0);
  return out;
}

double min_order_norm(const OperatorSystem& s, const ComplexMatrix& v,
                      const MinNormOptions& opts) {
  return min_order_norm_detail(s, v, opts).value;
}

double GaugeDecomposition::phase(int j, int phases) {
  return j * std::numbers::pi / phases;
}

double GaugeDecomposition::value() const { return gauge_value(parts); }

ComplexMatrix GaugeDecomposition::sum() const {
  ComplexMatrix total = ComplexMatrix::Zero(parts[0].rows(), parts[0].cols());
  for (int j = 0; j < phases; ++j) {
    total += std::polar(1.0, phase(j, phases)) * parts[j];
  }
  return total;
}

MaxNormResult max_order_norm(const OperatorSystem& s, const ComplexMatrix& v,
                             const MaxNormOptions& opts,
                             const GaugeDecomposition* seed) {
  require_member(s, v, "max_order_norm");
  MaxNormResult out;
  const int p = std::max(2, opts.phases + (opts.phases % 2));
  out.decomposition.phases = p;
  out.decomposition.parts.assign(p, ComplexMatrix::Zero(s.d(), s.d()));
  if (is_zero(v)) return out;
  out.lower = op_norm(v);

  // Rotated canonical split v = e^{ia} Re(w) + e^{i(a + pi/2)} Im(w),
  // w = e^{-ia} v, with a on the half grid so both phases are grid points.
  int best_k = 0;
  double best_val = INFINITY;
  for (int k = 0; k < p / 2; ++k) {
    const ComplexMatrix w = std::polar(1.0, -GaugeDecomposition::phase(k, p)) * v;
    const double val = hermitian_norm(hermitian_part(w)) +
                       hermitian_norm(skew_part(w));
    if (val < best_val) {
      best_val = val;
      best_k = k;
    }
  }
  std::vector<ComplexMatrix> z(p, ComplexMatrix::Zero(s.d(), s.d()));
  {
    const ComplexMatrix w =
        std::polar(1.0, -GaugeDecomposition::phase(best_k, p)) * v;
    z[best_k] = hermitian_part(w);
    z[best_k + p / 2] = skew_part(w);
  }
  out.canonical_upper = best_val;

  PhaseConstraint constraint(s, v, p);
  std::vector<ComplexMatrix> best = constraint.project(z);
  double best_obj = gauge_value(best);
  if (seed != nullptr && seed->phases == p &&
      static_cast<int>(seed->parts.size()) == p) {
    std::vector<ComplexMatrix> cand = constraint.project(seed->parts);
    const double val = gauge_value(cand);
    if (val < best_obj) {
      best_obj = val;
      best = cand;
    }
  }
  z = best;

  const double gamma = opts.gamma_scale * out.lower;
  const double stop = out.lower * (1.0 + 1e-13);
  int it = 0;
  for (; it < opts.max_iter && best_obj > stop; ++it) {
    std::vector<ComplexMatrix> x(p);
    std::vector<ComplexMatrix> reflect(p);
    for (int j = 0; j < p; ++j) {
      x[j] = prox_op_norm(z[j], gamma);
      reflect[j] = 2.0 * x[j] - z[j];
    }
    std::vector<ComplexMatrix> y = constraint.project(reflect);
    for (int j = 0; j < p; ++j) z[j] += y[j] - x[j];
    const double val = gauge_value(y);
    if (val < best_obj) {
      best_obj = val;
      best = std::move(y);
    }
  }
  out.iterations = it;
  out.upper = std::max(best_obj, out.lower);
  out.decomposition.parts = std::move(best);
  return out;
}

NormReport norm_report(const OperatorSystem& s, const ComplexMatrix& v,
                       const MinNormOptions& min_opts,
                       const MaxNormOptions& max_opts) {
  NormReport r;
  if (asymmetry(v) <= kMembershipTol * std::max(1.0, v.norm())) {
    r.h = order_norm_h(s, v);
  }
  const MinNormResult mn = min_order_norm_detail(s, v, min_opts);
  r.min = mn.value;
  r.min_grid_error = mn.grid_error;
  const MaxNormResult mx = max_order_norm(s, v, max_opts);
  r.max_lower = mx.lower;
  r.max_upper = mx.upper;
  r.op = op_norm(v);
  return r;
}

}  // namespace opsys
