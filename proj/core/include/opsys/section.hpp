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

#include "opsys/operator_system.hpp"

namespace opsys {

struct SectionOptions {
  // Stop once upper - lower falls below gap * max(1, |C|).
  double gap = 1e-11;
  // Stop as soon as the sign of (minimum - threshold) is certified.
  std::optional<double> threshold;
  int max_newton = 400;
};

// Bounds on min { tr(C x) : x in S Hermitian, x >= 0, tr x = 1 }.
// `lower` is certified by an explicit dual point; `upper` is attained at
// `minimizer`, a positive definite (or, for full S, rank-one) state.
struct SectionResult {
  double lower = 0.0;
  double upper = 0.0;
  ComplexMatrix minimizer;
  // W with W - C orthogonal to S and lambda_min(W) = lower: a Hermitian
  // extension of the functional tr(C .) from S to M_d.
  ComplexMatrix certificate;
  int newton_steps = 0;
  bool exact = false;  // closed form (full S or S = C I)
};

// Log-det barrier path following in the coordinates x = I/d + sum y_i B_i.
SectionResult section_minimize(const OperatorSystem& s, const ComplexMatrix& c,
                               const SectionOptions& opts = {});

}  // namespace opsys
