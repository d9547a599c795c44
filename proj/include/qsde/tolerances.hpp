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

namespace qsde {

/// Shared numerical thresholds. Every module reads its defaults from here.
struct Tolerances {
  double algebraic = 1e-12;   ///< matrix identities, Bloch round trips
  double integrator = 1e-9;   ///< integrator-facing comparisons
  double pole_guard = 1e-6;   ///< |1+z| or |1-z^2| below this is a pole
  double rank = 1e-8;         ///< singular values below rank*s_max are zero
  double independence = 1e-10;
  double coefficient_cleanup = 1e-13;
  double curve_residual = 1e-10;
};

inline constexpr Tolerances kTolerances{};

}  // namespace qsde
