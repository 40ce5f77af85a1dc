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

#include "opsys/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opsys/errors.hpp"

namespace opsys {

namespace {

void require_square(const ComplexMatrix& a, const char* where) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(
        std::string(where) + ": expected a non-empty square matrix, got " +
        std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

// Eigen's tridiagonal QR gives up after 30 sweeps per eigenvalue.
int eigen_iteration_budget(Eigen::Index n) { return 30 * static_cast<int>(n); }

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  require_square(a, "HermitianMatrix");
  m_ = (a + a.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& entries) {
  ComplexMatrix m = ComplexMatrix::Zero(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(m_ * s);
}

SpectralDecomposition spectral_decompose(const HermitianMatrix& h) {
  const ComplexMatrix& m = h.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericalError(
        "spectral_decompose: eigen iteration did not converge",
        eigen_iteration_budget(m.rows()));
  }
  SpectralDecomposition out;
  out.eigenvalues = es.eigenvalues().reverse();
  out.eigenvectors = es.eigenvectors().rowwise().reverse();
  return out;
}

SpectralDecomposition spectral_decompose(const ComplexMatrix& a) {
  return spectral_decompose(HermitianMatrix(a));
}

RealVector eigenvalues(const ComplexMatrix& hermitian) {
  require_square(hermitian, "eigenvalues");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      hermitian, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError(
        "eigenvalues: eigen iteration did not converge",
        eigen_iteration_budget(hermitian.rows()));
  }
  return es.eigenvalues().reverse();
}

double lambda_min(const ComplexMatrix& hermitian) {
  RealVector ev = eigenvalues(hermitian);
  return ev(ev.size() - 1);
}

double lambda_max(const ComplexMatrix& hermitian) {
  return eigenvalues(hermitian)(0);
}

HermitianMatrix project_psd(const HermitianMatrix& h) {
  return HermitianMatrix(project_psd(h.matrix()));
}

ComplexMatrix project_psd(const ComplexMatrix& hermitian) {
  require_square(hermitian, "project_psd");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian);
  if (es.info() != Eigen::Success) {
    throw NumericalError(
        "project_psd: eigen iteration did not converge",
        eigen_iteration_budget(hermitian.rows()));
  }
  const RealVector& ev = es.eigenvalues();
  Eigen::Index first = 0;
  while (first < ev.size() && ev(first) <= 0.0) ++first;
  const Eigen::Index k = ev.size() - first;
  if (k == 0) return ComplexMatrix::Zero(hermitian.rows(), hermitian.cols());
  ComplexMatrix v = es.eigenvectors().rightCols(k);
  ComplexMatrix scaled = v * ev.tail(k).cwiseSqrt().asDiagonal();
  return scaled * scaled.adjoint();
}

double op_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  ComplexMatrix g = a.cols() <= a.rows() ? ComplexMatrix(a.adjoint() * a)
                                         : ComplexMatrix(a * a.adjoint());
  return std::sqrt(std::max(0.0, lambda_max(g)));
}

double hermitian_norm(const ComplexMatrix& hermitian) {
  RealVector ev = eigenvalues(hermitian);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double trace_norm(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

ComplexMatrix skew_part(const ComplexMatrix& a) {
  return (a - a.adjoint()) * Complex(0.0, -0.5);
}

double asymmetry(const ComplexMatrix& a) {
  return (a - a.adjoint()).norm();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix matrix_unit(int d, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out =
      ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

RealVector hvec(const ComplexMatrix& h) {
  const Eigen::Index d = h.rows();
  RealVector v(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) v(k++) = h(i, i).real();
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const Complex z = 0.5 * (h(i, j) + std::conj(h(j, i)));
      v(k++) = s * z.real();
      v(k++) = s * z.imag();
    }
  }
  return v;
}

ComplexMatrix hunvec(const RealVector& v, int d) {
  if (v.size() != static_cast<Eigen::Index>(d) * d) {
    throw DimensionError("hunvec: vector length does not match d^2");
  }
  ComplexMatrix h(d, d);
  Eigen::Index k = 0;
  for (int i = 0; i < d; ++i) h(i, i) = v(k++);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const Complex z(s * v(k), s * v(k + 1));
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

}  // namespace opsys
