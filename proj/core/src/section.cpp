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

#include "opsys/section.hpp"

#include <cmath>

namespace opsys {

namespace {

struct Point {
  ComplexMatrix x;
  Eigen::LLT<ComplexMatrix> llt;
  double log_det = 0.0;
  bool ok = false;
};

Point make_point(const OperatorSystem& s, const RealVector& y) {
  Point p;
  const int d = s.d();
  p.x = ComplexMatrix::Identity(d, d) / double(d);
  for (int i = 1; i < s.dim(); ++i) p.x += y(i - 1) * s.basis(i);
  p.x = hermitian_part(p.x);
  p.llt.compute(p.x);
  if (p.llt.info() != Eigen::Success) return p;
  const auto diag = p.llt.matrixLLT().diagonal();
  double ld = 0.0;
  for (Eigen::Index k = 0; k < diag.size(); ++k) {
    const double v = diag(k).real();
    if (!(v > 0.0)) return p;
    ld += 2.0 * std::log(v);
  }
  p.log_det = ld;
  p.ok = true;
  return p;
}

// Lower bound from any Hermitian z: shift z inside S to match C on the
// traceless directions, then tr(Cx) >= lambda + lambda_min(z') on the section.
// On return z holds z' + lambda I.
double dual_bound(const OperatorSystem& s, const ComplexMatrix& c,
                  const RealVector& ci, ComplexMatrix& z) {
  const int d = s.d();
  for (int i = 1; i < s.dim(); ++i) {
    const double r = ci(i - 1) - (s.basis(i) * z).trace().real();
    z += r * s.basis(i);
  }
  z = hermitian_part(z);
  const double lam = (c.trace().real() - z.trace().real()) / d;
  z += lam * ComplexMatrix::Identity(d, d);
  return lambda_min(z);
}

// Rounds a near-optimal extension z using the range of a near-optimal state
// x: solves (C + w - mu I) X = 0 for the S-orthogonal correction w of least
// norm, X spanning the top r eigenvectors of x. Any result is a valid
// certificate; returns the best over the candidate ranks.
bool polish(const OperatorSystem& s, const ComplexMatrix& c,
            const ComplexMatrix& x, ComplexMatrix& z, double& bound) {
  const int d = s.d();
  const int nh = d * d;
  RealMatrix sb(nh, s.dim());
  for (int i = 0; i < s.dim(); ++i) sb.col(i) = hvec(s.basis(i));
  // Orthonormal basis of the Hermitian complement of S.
  const Eigen::HouseholderQR<RealMatrix> qr(sb);
  const RealMatrix q = qr.householderQ();
  const int m = nh - s.dim();
  std::vector<ComplexMatrix> perp(m);
  for (int k = 0; k < m; ++k) perp[k] = hunvec(q.col(s.dim() + k), d);

  const SpectralDecomposition sd = spectral_decompose(hermitian_part(x));
  bool improved = false;
  for (int r = 1; r < d; ++r) {
    const double big = sd.eigenvalues(r - 1);
    const double small = std::max(sd.eigenvalues(r), 0.0);
    if (!(big > 1e2 * small)) continue;
    const ComplexMatrix xr = sd.eigenvectors.leftCols(r);
    // Unknowns: corrections a_k along perp, and mu.
    RealMatrix a(2 * d * r, m + 1);
    for (int k = 0; k < m; ++k) {
      const ComplexMatrix col = perp[k] * xr;
      a.col(k) << col.real().reshaped(), col.imag().reshaped();
    }
    {
      const ComplexMatrix col = -xr;
      a.col(m) << col.real().reshaped(), col.imag().reshaped();
    }
    const ComplexMatrix base = hermitian_part(z);
    const ComplexMatrix res = base * xr;
    RealVector rhs(2 * d * r);
    rhs << -res.real().reshaped(), -res.imag().reshaped();
    const RealVector sol = a.completeOrthogonalDecomposition().solve(rhs);
    ComplexMatrix w = base;
    for (int k = 0; k < m; ++k) w += sol(k) * perp[k];
    w = hermitian_part(w);
    // Restore the S components exactly.
    for (int i = 1; i < s.dim(); ++i) {
      w += ((s.basis(i) * (c - w)).trace().real()) * s.basis(i);
    }
    w += ((c - w).trace().real() / d) * ComplexMatrix::Identity(d, d);
    w = hermitian_part(w);
    const double b = lambda_min(w);
    if (b > bound) {
      bound = b;
      z = std::move(w);
      improved = true;
    }
  }
  return improved;
}

}  // namespace

SectionResult section_minimize(const OperatorSystem& s, const ComplexMatrix& c_in,
                               const SectionOptions& opts) {
  const int d = s.d();
  const ComplexMatrix c = hermitian_part(c_in);
  SectionResult out;
  if (s.is_full()) {
    const SpectralDecomposition sd = spectral_decompose(c);
    const ComplexVector v = sd.eigenvectors.col(d - 1);
    out.lower = out.upper = sd.eigenvalues(d - 1);
    out.minimizer = v * v.adjoint();
    out.certificate = c;
    out.exact = true;
    return out;
  }
  if (s.dim() == 1) {
    out.lower = out.upper = c.trace().real() / d;
    out.minimizer = ComplexMatrix::Identity(d, d) / double(d);
    out.certificate = out.minimizer * c.trace().real();
    out.exact = true;
    return out;
  }

  const int m = s.dim() - 1;
  RealVector ci(m);
  for (int i = 1; i <= m; ++i) ci(i - 1) = (c * s.basis(i)).trace().real();
  const double scale = std::max(1.0, ci.norm() + std::abs(c.trace().real()) / d);
  const double target = opts.gap * scale;
  const double offset = c.trace().real() / d;

  RealVector y = RealVector::Zero(m);
  Point cur = make_point(s, y);
  double t = 1.0 / scale;
  out.lower = -INFINITY;
  out.upper = INFINITY;

  auto phi = [&](const RealVector& yy, const Point& p) {
    return t * ci.dot(yy) - p.log_det;
  };

  ComplexMatrix a(d * d, m);
  ComplexMatrix at(d * d, m);
  while (out.newton_steps < opts.max_newton) {
    // Centering.
    for (int inner = 0; inner < 60 && out.newton_steps < opts.max_newton;
         ++inner) {
      ++out.newton_steps;
      const ComplexMatrix xinv =
          cur.llt.solve(ComplexMatrix::Identity(d, d));
      RealVector g(m);
      for (int i = 0; i < m; ++i) {
        const ComplexMatrix yi = xinv * s.basis(i + 1);
        g(i) = t * ci(i) - yi.trace().real();
        a.col(i) = Eigen::Map<const ComplexVector>(yi.data(), d * d);
        const ComplexMatrix yt = yi.transpose();
        at.col(i) = Eigen::Map<const ComplexVector>(yt.data(), d * d);
      }
      const RealMatrix h = (a.transpose() * at).real();
      const RealVector step = -h.ldlt().solve(g);
      const double dec = -g.dot(step);
      if (!(dec > 2e-12)) break;
      const double f0 = phi(y, cur);
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-14) {
        const RealVector trial = y + alpha * step;
        Point p = make_point(s, trial);
        if (p.ok && phi(trial, p) <= f0 - 0.25 * alpha * dec) {
          y = trial;
          cur = std::move(p);
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }

    const ComplexMatrix xinv = cur.llt.solve(ComplexMatrix::Identity(d, d));
    out.upper = offset + ci.dot(y);
    out.minimizer = cur.x;
    ComplexMatrix z = hermitian_part(xinv / t);
    const double bound = dual_bound(s, c, ci, z);
    if (bound > out.lower) {
      out.lower = bound;
      out.certificate = std::move(z);
    }
    if (opts.threshold) {
      if (out.lower >= *opts.threshold || out.upper < *opts.threshold) break;
    }
    if (out.upper - out.lower <= target) break;
    if (out.upper - out.lower <= 1e-6 * scale &&
        polish(s, c, out.minimizer, out.certificate, out.lower) &&
        out.upper - out.lower <= target) {
      break;
    }
    t *= 8.0;
    if (t > 1e16 / scale) break;
  }
  const bool decided =
      opts.threshold &&
      (out.lower >= *opts.threshold || out.upper < *opts.threshold);
  if (!decided && out.upper - out.lower > target && out.certificate.size() > 0) {
    polish(s, c, out.minimizer, out.certificate, out.lower);
  }
  return out;
}

}  // namespace opsys
