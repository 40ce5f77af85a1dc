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

#include "opsys/errors.hpp"

#include <utility>

namespace opsys {

NumericalError::NumericalError(const std::string& what, int iterations)
    : Error(what + " (after " + std::to_string(iterations) + " iterations)"),
      iterations_(iterations) {}

MembershipError::MembershipError(const std::string& what, double residual)
    : Error(what), residual_(residual) {}

NotHermitianError::NotHermitianError(const std::string& what, double asymmetry)
    : Error(what), asymmetry_(asymmetry) {}

ValidationError::ValidationError(std::string check, const std::string& what)
    : Error("validation failed [" + check + "]: " + what),
      check_(std::move(check)) {}

InconsistentThreadError::InconsistentThreadError(
    const std::string& what, double residual)
    : Error(what), residual_(residual) {}

InfeasibleAffineError::InfeasibleAffineError(
    const std::string& what, double residual)
    : Error(what), residual_(residual) {}

}  // namespace opsys
