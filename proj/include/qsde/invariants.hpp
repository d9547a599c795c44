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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsde/qubit_state.hpp"
#include "qsde/sde.hpp"

namespace qsde {

/// Coordinates that are either deterministic along trajectories of a matching
/// preset or used as the state variable of a closed-form density.
enum class InvariantTag { B_heh, C_hen, B_hoh, C_hon, F_hon, Phi, Chi, W, StrSurfC };

struct InvariantKind {
  InvariantTag tag = InvariantTag::B_heh;
  double beta = 0.0;  ///< offset of the y-coordinate, StrSurfC only
};

InvariantKind parse_invariant(const std::string& name, double beta = 0.0);
std::string invariant_name(InvariantKind kind);

/// Thrown when a formula is evaluated at one of its singular planes.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// b = r²/(1−z²); c = (1+z−r²/2)/(1+z)² (x in place of r for C_hon);
/// f = y/(1+z); φ = r²/(η(1+z)²); χ = x²/(2η(1+z)²); w = atanh z;
/// StrSurfC = (1−|v|²)/(y+β)².
double eval_invariant(InvariantKind kind, const Eigen::Vector3d& v, double eta,
                      double pole_guard = kTolerances.pole_guard);
inline double eval_invariant(InvariantKind kind, const BlochVector& v, double eta) {
  return eval_invariant(kind, v.vec(), eta);
}

/// Exact time evolution of the deterministic coordinates (simulation clock).
/// StrSurfC is treated as conserved; that holds only for the models that
/// carry the surface (e.g. L = σz + σ− at unit efficiency with β = 0).
double predict_invariant(InvariantKind kind, double value0, double eta, double t);

/// Which preset a conserved/evolving coordinate belongs to.
Preset matching_preset(InvariantKind kind);

struct ConfinementReport {
  std::string kind;
  double eta = 0.0;
  double max_residual = 0.0;       ///< absolute
  double rms_residual = 0.0;       ///< absolute
  double scale = 0.0;              ///< dynamic range used for normalization
  double normalized_max = 0.0;     ///< max_residual / scale
  double normalized_rms = 0.0;
  bool pole_hit = false;
  std::size_t samples = 0;         ///< points actually compared
  std::vector<std::pair<double, double>> predicted_path;
  std::vector<std::pair<double, double>> observed_path;
};

/// Compares the invariant along a trajectory with its predicted evolution.
/// The comparison window ends at the first sample that hits a pole.
/// The normalization scale is max(predicted range, |value at 0|, |value at end|),
/// floored at 1e-12 for conserved quantities that are themselves zero.
ConfinementReport confinement_check(const Trajectory& traj, InvariantKind kind,
                                    double eta);

/// Σ(Δ eval)² along the stored samples (stops at a pole).
double quadratic_variation(const Trajectory& traj, InvariantKind kind, double eta);

}  // namespace qsde
