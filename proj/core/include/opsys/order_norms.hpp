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

#include <optional>
#include <vector>

#include "opsys/operator_system.hpp"

namespace opsys {

// inf { r : -r I <= v <= r I } for Hermitian v in S.
double order_norm_h(const OperatorSystem& s, const ComplexMatrix& v);

struct MinNormOptions {
  int grid = 256;  // theta samples on [0, 2 pi)
  int refine = 4;  // local maxima polished by golden-section search
};

struct MinNormResult {
  double value = 0.0;
  // The true norm lies in [value, value + grid_error].
  double grid_error = 0.0;
  double theta = 0.0;  // maximizing phase
};

// Numerical radius max_theta lambda_max(Re(e^{i theta} v)).
MinNormResult min_order_norm_detail(const OperatorSystem& s,
                                    const ComplexMatrix& v,
                                    const MinNormOptions& opts = {});
double min_order_norm(const OperatorSystem& s, const ComplexMatrix& v,
                      const MinNormOptions& opts = {});

// v = sum_j e^{i j pi / P} parts[j] with Hermitian parts in S.
struct GaugeDecomposition {
  int phases = 0;
  std::vector<ComplexMatrix> parts;

  double value() const;  // sum of operator norms
  ComplexMatrix sum() const;
  static double phase(int j, int phases);
};

struct MaxNormOptions {
  int phases = 64;
  int max_iter = 400;
  double gamma_scale = 0.3;  // Douglas-Rachford step relative to op_norm(v)
};

struct MaxNormResult {
  double lower = 0.0;            // op_norm(v)
  double upper = 0.0;            // best decomposition found
  double canonical_upper = 0.0;  // best rotated Re/Im split
  GaugeDecomposition decomposition;
  int iterations = 0;
};

// Sandwich for the maximal order norm. `seed`, when given, is projected onto
// the decomposition constraints and competes with the built-in start.
MaxNormResult max_order_norm(const OperatorSystem& s, const ComplexMatrix& v,
                             const MaxNormOptions& opts = {},
                             const GaugeDecomposition* seed = nullptr);

struct NormReport {
  std::optional<double> h;
  double min = 0.0;
  double min_grid_error = 0.0;
  double max_lower = 0.0;
  double max_upper = 0.0;
  double op = 0.0;
};

NormReport norm_report(const OperatorSystem& s, const ComplexMatrix& v,
                       const MinNormOptions& min_opts = {},
                       const MaxNormOptions& max_opts = {});

// Euclidean projection onto { x : ||x||_1 <= radius }.
RealVector project_l1_ball(const RealVector& x, double radius);

}  // namespace opsys
