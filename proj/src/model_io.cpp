// Copyright 2026 The qubit-sde Authors
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

#include "qsde/model_io.hpp"

#include <fstream>

namespace qsde {

using nlohmann::json;

json matrix_to_json(const Matrix2c& m) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int j = 0; j < 2; ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix2c matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidState("matrix must be a 2x2 array of [re, im] pairs");
  Matrix2c m;
  for (int i = 0; i < 2; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != 2)
      throw InvalidState("matrix row must hold two entries");
    for (int k = 0; k < 2; ++k) {
      const auto& e = row[k];
      if (e.is_number()) {
        m(i, k) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                 e[1].is_number()) {
        m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw InvalidState("matrix entry must be [re, im]");
      }
    }
  }
  return m;
}

json model_to_json(const ModelSpec& model) {
  json channels = json::array();
  for (const auto& c : model.channels)
    channels.push_back({{"operator", matrix_to_json(c.op)},
                        {"efficiency", c.efficiency}});
  return {{"hamiltonian", matrix_to_json(model.hamiltonian)},
          {"channels", channels}};
}

ModelSpec model_from_json(const json& j) {
  if (!j.is_object()) throw InvalidState("model must be a JSON object");
  Matrix2c h = Matrix2c::Zero();
  if (j.contains("hamiltonian")) h = matrix_from_json(j.at("hamiltonian"));
  if (!j.contains("channels") || !j.at("channels").is_array())
    throw InvalidState("model needs a \"channels\" array");
  std::vector<LindbladChannel> channels;
  for (const auto& c : j.at("channels")) {
    if (!c.contains("operator") || !c.contains("efficiency") ||
        !c.at("efficiency").is_number())
      throw InvalidState("channel needs \"operator\" and numeric \"efficiency\"");
    channels.push_back({matrix_from_json(c.at("operator")),
                        c.at("efficiency").get<double>()});
  }
  return make_model(h, std::move(channels));
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidState(std::string("malformed model JSON: ") + e.what());
  }
  return model_from_json(j);
}

}  // namespace qsde
