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
#include <vector>

namespace qsde::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kValidation = 2, kNonConvergence = 3 };

/// Environment variable naming the directory for outputs given without a path.
inline constexpr const char* kOutputDirEnv = "QSDE_OUTPUT_DIR";

int run(int argc, const char* const* argv);
/// Same as the above with argv[0] supplied; convenient in tests.
int run(const std::vector<std::string>& args);

}  // namespace qsde::cli
