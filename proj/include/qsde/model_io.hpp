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

#pragma once

#include <string>

#include <json.hpp>

#include "qsde/qubit_state.hpp"

namespace qsde {

/// Matrices are stored as [[[re,im],[re,im]],[[re,im],[re,im]]].
nlohmann::json matrix_to_json(const Matrix2c& m);
Matrix2c matrix_from_json(const nlohmann::json& j);

/// {"hamiltonian": matrix, "channels": [{"operator": matrix, "efficiency": x}]}
/// A missing hamiltonian means H = 0.
nlohmann::json model_to_json(const ModelSpec& model);
ModelSpec model_from_json(const nlohmann::json& j);

ModelSpec load_model(const std::string& path);

}  // namespace qsde
