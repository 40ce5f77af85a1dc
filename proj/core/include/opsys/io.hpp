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

#include <string>

#include <nlohmann/json.hpp>

#include "opsys/dual_space.hpp"
#include "opsys/feasibility.hpp"
#include "opsys/operator_system.hpp"
#include "opsys/tower.hpp"

namespace opsys {

using Json = nlohmann::ordered_json;

// Complex entries are [re, im]; matrices are arrays of rows.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"d": int, "generators": [matrix, ...]}
Json system_to_json(const OperatorSystem& s);
OperatorSystem system_from_json(const Json& j);

// {"riesz": matrix}. The system is supplied separately.
Json functional_to_json(const Functional& f);
Functional functional_from_json(const Json& j, SystemPtr s);

Json problem_to_json(const FeasibilityProblem& p);
FeasibilityProblem problem_from_json(const Json& j);

// {"systems": [system | name, ...],
//  "embeddings": [{"matrix_on_basis": [phi(I), phi(g_1), ...]}, ...]}
// Each embedding lists the images of the unit and of the domain generators.
Json tower_to_json(const Tower& t);
Tower tower_from_json(const Json& j, Rng& rng, const TowerValidation& v = {});

// Parses text; throws ParseError with the parser's diagnostic.
Json parse_json(const std::string& text);
// Reads a file, throwing ParseError when it cannot be read or parsed.
Json read_json_file(const std::string& path);

// A builtin name ("full:3", ...) or the path of a system JSON file.
OperatorSystem load_system(const std::string& name_or_path);

}  // namespace opsys
