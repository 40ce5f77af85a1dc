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

#include "opsys/random.hpp"

#include <cmath>

namespace opsys {

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(rng);
}

double gaussian(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

ComplexMatrix random_gaussian(Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = gaussian(rng);
      const double im = gaussian(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, int d) {
  ComplexMatrix h = hermitian_part(random_gaussian(rng, d, d));
  const double n = hermitian_norm(h);
  return n > 0 ? ComplexMatrix(h / n) : h;
}

ComplexMatrix random_unitary(Rng& rng, int d) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_gaussian(rng, d, d));
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

ComplexMatrix random_density(Rng& rng, int d, int rank) {
  if (rank <= 0 || rank > d) rank = d;
  ComplexMatrix g = random_gaussian(rng, d, rank);
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

ComplexVector random_unit_vector(Rng& rng, int d) {
  ComplexVector v = random_gaussian(rng, d, 1).col(0);
  return v / v.norm();
}

}  // namespace opsys
