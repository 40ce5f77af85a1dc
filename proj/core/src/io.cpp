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

#include "opsys/io.hpp"

#include <fstream>
#include <sstream>

#include "opsys/errors.hpp"

namespace opsys {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

double number(const Json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

// Generators as a reloaded system would see them.
std::vector<ComplexMatrix> serialized_generators(const OperatorSystem& s) {
  if (s.is_full()) return builtin_system("full:" + std::to_string(s.d())).generators();
  return s.generators();
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw ParseError("matrix row " + std::to_string(r) + " has the wrong length");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = Complex(number(e[0], "real part"), number(e[1], "imaginary part"));
      } else {
        throw ParseError("matrix entry (" + std::to_string(r) + ", " +
                         std::to_string(c) + ") must be [re, im]");
      }
    }
  }
  return m;
}

Json system_to_json(const OperatorSystem& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators()) gens.push_back(matrix_to_json(g));
  Json out;
  out["d"] = s.d();
  out["generators"] = std::move(gens);
  return out;
}

OperatorSystem system_from_json(const Json& j) {
  if (j.is_string()) return builtin_system(j.get<std::string>());
  const int d = int_field(j, "d");
  if (d <= 0) throw ParseError("system dimension must be positive");
  const Json& gj = field(j, "generators");
  if (!gj.is_array()) throw ParseError("'generators' must be an array");
  std::vector<ComplexMatrix> gens;
  for (const auto& g : gj) {
    ComplexMatrix m = matrix_from_json(g);
    if (m.rows() != d || m.cols() != d) {
      throw ParseError("generator size does not match d = " + std::to_string(d));
    }
    gens.push_back(std::move(m));
  }
  return make_operator_system(gens, d);
}

Json functional_to_json(const Functional& f) {
  Json out;
  out["riesz"] = matrix_to_json(f.canonical());
  return out;
}

Functional functional_from_json(const Json& j, SystemPtr s) {
  const Json& r = j.is_object() ? field(j, "riesz") : j;
  const ComplexMatrix m = matrix_from_json(r);
  if (m.rows() != s->d() || m.cols() != s->d()) {
    throw ParseError("functional Riesz matrix does not match the system size");
  }
  return Functional(std::move(s), m);
}

Json problem_to_json(const FeasibilityProblem& p) {
  Json cs = Json::array();
  for (const auto& c : p.constraints) {
    Json cj;
    cj["a"] = matrix_to_json(c.a.matrix());
    cj["b"] = c.b;
    cs.push_back(std::move(cj));
  }
  Json out;
  out["dim"] = p.dim;
  out["tol"] = p.tol;
  out["max_iter"] = p.max_iter;
  out["constraints"] = std::move(cs);
  return out;
}

FeasibilityProblem problem_from_json(const Json& j) {
  FeasibilityProblem p;
  p.dim = int_field(j, "dim");
  if (j.contains("tol")) p.tol = number(j["tol"], "tol");
  if (j.contains("max_iter")) p.max_iter = int_field(j, "max_iter");
  const Json& cs = field(j, "constraints");
  if (!cs.is_array()) throw ParseError("'constraints' must be an array");
  for (const auto& cj : cs) {
    Constraint c;
    c.a = HermitianMatrix(matrix_from_json(field(cj, "a")));
    c.b = number(field(cj, "b"), "constraint right-hand side");
    p.constraints.push_back(std::move(c));
  }
  return p;
}

Json tower_to_json(const Tower& t) {
  Json systems = Json::array();
  for (int k = 0; k < t.depth(); ++k) {
    const OperatorSystem& s = *t.system(k);
    if (s.is_full()) {
      systems.push_back("full:" + std::to_string(s.d()));
    } else {
      systems.push_back(system_to_json(s));
    }
  }
  Json embeddings = Json::array();
  for (const auto& phi : t.maps()) {
    Json images = Json::array();
    images.push_back(matrix_to_json(phi.apply(phi.domain()->unit())));
    for (const auto& g : serialized_generators(*phi.domain())) {
      images.push_back(matrix_to_json(phi.apply(g)));
    }
    Json e;
    e["matrix_on_basis"] = std::move(images);
    embeddings.push_back(std::move(e));
  }
  Json out;
  out["name"] = t.name();
  out["systems"] = std::move(systems);
  out["embeddings"] = std::move(embeddings);
  return out;
}

Tower tower_from_json(const Json& j, Rng& rng, const TowerValidation& v) {
  const Json& sj = field(j, "systems");
  const Json& ej = field(j, "embeddings");
  if (!sj.is_array() || !ej.is_array()) {
    throw ParseError("'systems' and 'embeddings' must be arrays");
  }
  if (sj.empty() || ej.size() + 1 != sj.size()) {
    throw ParseError("a tower with n systems needs n - 1 embeddings");
  }
  std::vector<SystemPtr> systems;
  for (const auto& s : sj) systems.push_back(share(system_from_json(s)));
  std::vector<LinearMap> maps;
  for (std::size_t k = 0; k < ej.size(); ++k) {
    const Json& images_j = field(ej[k], "matrix_on_basis");
    if (!images_j.is_array()) throw ParseError("'matrix_on_basis' must be an array");
    std::vector<ComplexMatrix> images;
    for (const auto& m : images_j) images.push_back(matrix_from_json(m));
    maps.push_back(map_from_generator_images(systems[k], systems[k + 1], images));
  }
  std::string name = "custom";
  if (j.contains("name") && j["name"].is_string()) name = j["name"].get<std::string>();
  return Tower(std::move(systems), std::move(maps), rng, v, name);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

OperatorSystem load_system(const std::string& name_or_path) {
  if (name_or_path == "pauli-span" || name_or_path.rfind("full:", 0) == 0 ||
      name_or_path.rfind("diag:", 0) == 0 ||
      name_or_path.rfind("toeplitz:", 0) == 0) {
    return builtin_system(name_or_path);
  }
  return system_from_json(read_json_file(name_or_path));
}

}  // namespace opsys
