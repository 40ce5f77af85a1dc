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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace opsys {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Square complex matrix equal to its adjoint. Construction from an arbitrary
// square matrix keeps (A + A*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& a);

  static HermitianMatrix zero(int dim);
  static HermitianMatrix identity(int dim);
  static HermitianMatrix diagonal(const std::vector<double>& entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  ComplexMatrix m_;
};

struct SpectralDecomposition {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // column k belongs to eigenvalues(k)
};

SpectralDecomposition spectral_decompose(const HermitianMatrix& h);
// Accepts any square matrix and uses its Hermitian part; non-square input
// throws DimensionError.
SpectralDecomposition spectral_decompose(const ComplexMatrix& a);

// Eigenvalues only, descending.
RealVector eigenvalues(const ComplexMatrix& hermitian);
double lambda_min(const ComplexMatrix& hermitian);
double lambda_max(const ComplexMatrix& hermitian);

// Frobenius-nearest positive semidefinite matrix.
HermitianMatrix project_psd(const HermitianMatrix& h);
ComplexMatrix project_psd(const ComplexMatrix& hermitian);

// Largest singular value, as sqrt(lambda_max(A* A)).
double op_norm(const ComplexMatrix& a);
// max |eigenvalue| for Hermitian input.
double hermitian_norm(const ComplexMatrix& hermitian);
double trace_norm(const ComplexMatrix& a);

ComplexMatrix hermitian_part(const ComplexMatrix& a);  // (A + A*)/2
ComplexMatrix skew_part(const ComplexMatrix& a);       // (A - A*)/(2i)
double asymmetry(const ComplexMatrix& a);              // ||A - A*||_F

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matrix_unit(int d, int i, int j);  // E_ij
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Hermitian d x d matrices as real vectors of length d^2, isometric for the
// Frobenius inner product: diagonal, then sqrt2 Re and sqrt2 Im of the upper
// triangle.
RealVector hvec(const ComplexMatrix& hermitian);
ComplexMatrix hunvec(const RealVector& v, int d);

}  // namespace opsys
