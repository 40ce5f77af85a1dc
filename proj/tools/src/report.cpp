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

#include "opsys/harness/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace opsys::harness {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::undecided:
      return "undecided";
  }
  return "?";
}

void RunReport::add(std::string name, std::string operation, Status status,
                    std::string detail, Json evidence) {
  checks.push_back({std::move(name), std::move(operation), status,
                    std::move(detail), std::move(evidence)});
}

int RunReport::count(Status s) const {
  return static_cast<int>(std::count_if(
      checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

namespace {

std::vector<const Check*> sorted(const std::vector<Check>& checks) {
  std::vector<const Check*> out;
  for (const auto& c : checks) out.push_back(&c);
  std::stable_sort(out.begin(), out.end(), [](const Check* a, const Check* b) {
    return a->name < b->name;
  });
  return out;
}

}  // namespace

Json RunReport::to_json() const {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = config;
  Json cs = Json::array();
  for (const Check* c : sorted(checks)) {
    Json cj;
    cj["name"] = c->name;
    cj["operation"] = c->operation;
    cj["status"] = to_string(c->status);
    cj["detail"] = c->detail;
    cj["evidence"] = c->evidence;
    cs.push_back(std::move(cj));
  }
  j["checks"] = std::move(cs);
  j["summary"] = {{"pass", count(Status::pass)},
                  {"fail", count(Status::fail)},
                  {"undecided", count(Status::undecided)}};
  if (!result.is_null()) j["result"] = result;
  if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << command << " (seed " << seed << ")\n";
  std::size_t width = 4;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const Check* c : sorted(checks)) {
    char status[16];
    std::snprintf(status, sizeof status, "%-9s", to_string(c->status));
    out << status << ' ' << c->name << std::string(width - c->name.size() + 2, ' ')
        << c->detail << '\n';
  }
  if (!result.is_null()) out << "result: " << result.dump() << '\n';
  out << count(Status::pass) << " pass, " << count(Status::fail) << " fail, "
      << count(Status::undecided) << " undecided";
  if (elapsed_ms) out << " in " << *elapsed_ms << " ms";
  out << '\n';
  return out.str();
}

int exit_code(const std::vector<Check>& checks) {
  bool undecided = false;
  for (const auto& c : checks) {
    if (c.status == Status::fail) return kExitFail;
    if (c.status == Status::undecided) undecided = true;
  }
  return undecided ? kExitUndecided : kExitOk;
}

}  // namespace opsys::harness
