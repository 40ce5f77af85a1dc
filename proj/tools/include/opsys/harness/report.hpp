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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "opsys/io.hpp"

namespace opsys::harness {

enum class Status { pass, fail, undecided };
const char* to_string(Status s);

struct Check {
  std::string name;
  std::string operation;  // module/operation that produced the verdict
  Status status = Status::undecided;
  std::string detail;
  Json evidence = Json::object();
};

inline constexpr const char* kSchema = "opsys-report/1";

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  Json config = Json::object();
  std::vector<Check> checks;
  Json result;  // command-specific payload, omitted when null
  std::optional<long long> elapsed_ms;

  void add(Check c) { checks.push_back(std::move(c)); }
  void add(std::string name, std::string operation, Status status,
           std::string detail, Json evidence = Json::object());
  int count(Status s) const;

  // Checks are emitted sorted by name.
  Json to_json() const;
  std::string to_text() const;
};

// 0 when every check passes, 2 when any fails, 3 when the rest are undecided.
int exit_code(const std::vector<Check>& checks);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 2;
inline constexpr int kExitUndecided = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitInput = 65;

}  // namespace opsys::harness
