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
#include <string>
#include <vector>

#include "opsys/harness/report.hpp"
#include "opsys/random.hpp"

namespace opsys::harness {

struct SuiteParams {
  double tol = 1e-7;
  int depth = 4;
  int levels = 0;   // 0: suite default
  int samples = 0;  // 0: suite default
};

const std::vector<std::string>& suite_names();

// Appends the suite's checks to `report` and records the effective
// parameters in report.config. Throws std::invalid_argument for unknown names.
void run_suite(const std::string& name, const SuiteParams& params, Rng& rng,
               RunReport& report);

// Shared by `opsys dual choi-effros` and the choi-effros suite.
void choi_effros_checks(SystemPtr s, const std::string& prefix, int functionals,
                        int levels, double tol, Rng& rng, RunReport& report);

// Shared by `opsys tower verify-duality` and the duality-tower suite.
void duality_checks(const Tower& t, int samples, int levels, Rng& rng,
                    RunReport& report);

}  // namespace opsys::harness
