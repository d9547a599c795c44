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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsde/qubit_state.hpp"

namespace qsde {

/// Heterodyne/homodyne monitoring of a dephasing (σz) or fluorescence (σ−)
/// channel, each with unit rate and Hamiltonian zero.
enum class Preset { HeH, HeN, HoH, HoN };

Preset parse_preset(std::string_view name);
std::string preset_name(Preset p);

/// HeH: (σz, η), (iσz, η); HeN: (σ−, η), (iσ−, η); HoH: (σz, η); HoN: (σ−, η).
ModelSpec preset(Preset p, double eta);

struct StepResult {
  DensityMatrix rho;
  std::vector<double> records;  ///< dy_k over the step
  bool projected = false;       ///< the raw Euler update left the Bloch ball
};

/// One Euler–Maruyama step of the Itô master equation. `noise` holds the
/// Wiener increments ΔW_k (already scaled by √dt).
StepResult step_ito(const ModelSpec& model, const DensityMatrix& rho, double dt,
                    std::span<const double> noise);

struct TrajectoryPoint {
  double time = 0.0;
  BlochVector state;
  std::vector<double> records;
};

/// Samples are stored flat: states(i), records(i, k).
struct Trajectory {
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::size_t channels = 0;
  std::vector<double> times;
  std::vector<Eigen::Vector3d> states;
  std::vector<double> records;  ///< size() == times.size() * channels
  std::size_t projections = 0;

  std::size_t size() const { return times.size(); }
  const Eigen::Vector3d& state(std::size_t i) const { return states[i]; }
  double record(std::size_t i, std::size_t k) const { return records[i * channels + k]; }
  TrajectoryPoint point(std::size_t i) const;
  const Eigen::Vector3d& final_state() const { return states.back(); }
};

struct SimulationOptions {
  /// Keep every `stride`-th step (the last step is always kept); records are
  /// summed over the skipped steps so they remain increments between samples.
  std::size_t stride = 1;
  /// 0 means one worker per hardware thread.
  std::size_t threads = 0;
};

Trajectory simulate_trajectory(const ModelSpec& model, const DensityMatrix& rho0,
                               double dt, double horizon, std::uint64_t seed,
                               const SimulationOptions& options = {});

struct Ensemble {
  ModelSpec model;
  double dt = 0.0;
  double horizon = 0.0;
  std::uint64_t base_seed = 0;
  std::vector<Trajectory> trajectories;

  std::size_t projections() const;
  std::vector<Eigen::Vector3d> final_states() const;
};

/// Trajectory i is seeded with derive_seed(base_seed, i); the result does not
/// depend on thread scheduling.
Ensemble simulate_ensemble(const ModelSpec& model, const DensityMatrix& rho0,
                           double dt, double horizon, std::size_t n,
                           std::uint64_t base_seed,
                           const SimulationOptions& options = {});

}  // namespace qsde
