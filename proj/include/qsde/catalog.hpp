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

#include <cstdint>
#include <string>
#include <vector>

#include "qsde/accessibility.hpp"

namespace qsde {

struct CatalogRow {
  std::string group;     ///< fixture family, e.g. "single-operator" or "pairs"
  std::string name;
  std::string check;     ///< "dimension", "curve", "dependence", "simulation", "span"
  std::string model;     ///< compact description of the operators and efficiencies
  std::string expected;
  std::string obtained;
  bool pass = false;
  std::string note;
};

struct CatalogReport {
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CatalogRow> rows;

  bool all_pass() const;
  std::size_t failures() const;
};

/// Runs every classification fixture; parameter draws are derived from `seed`.
CatalogReport catalog_check(std::uint64_t seed = 2024, int samples = 12);

/// Short human-readable description of a model.
std::string describe_model(const ModelSpec& model);

}  // namespace qsde
