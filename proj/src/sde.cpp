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

#include "qsde/sde.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qsde/rng.hpp"

namespace qsde {

Preset parse_preset(std::string_view name) {
  if (name == "HeH") return Preset::HeH;
  if (name == "HeN") return Preset::HeN;
  if (name == "HoH") return Preset::HoH;
  if (name == "HoN") return Preset::HoN;
  throw InvalidState("unknown preset '" + std::string(name) +
                     "' (expected HeH, HeN, HoH or HoN)");
}

std::string preset_name(Preset p) {
  switch (p) {
    case Preset::HeH: return "HeH";
    case Preset::HeN: return "HeN";
    case Preset::HoH: return "HoH";
    case Preset::HoN: return "HoN";
  }
  return {};
}

ModelSpec preset(Preset p, double eta) {
  const Complex i(0, 1);
  const bool dephasing = p == Preset::HeH || p == Preset::HoH;
  const Matrix2c L = dephasing ? pauli::z() : pauli::minus();
  std::vector<LindbladChannel> channels{{L, eta}};
  if (p == Preset::HeH || p == Preset::HeN) channels.push_back({i * L, eta});
  return make_model(Matrix2c::Zero(), std::move(channels));
}

StepResult step_ito(const ModelSpec& model, const DensityMatrix& rho_in, double dt,
                    std::span<const double> noise) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidState("dt must be positive");
  if (noise.size() != model.channels.size())
    throw InvalidState("noise draw length does not match channel count");
  for (double w : noise)
    if (!std::isfinite(w)) throw InvalidState("non-finite noise increment");

  const Matrix2c& rho = rho_in.matrix();
  const Complex i(0, 1);
  Matrix2c next = rho - i * dt * commutator(model.hamiltonian, rho);
  std::vector<double> records(noise.size());
  for (std::size_t k = 0; k < noise.size(); ++k) {
    const auto& [L, eta] = model.channels[k];
    const Matrix2c s = L * rho + rho * L.adjoint();
    const double mean = s.trace().real();
    const double gain = std::sqrt(eta);
    next += dt * superop_F(L, rho) + (gain * noise[k]) * (s - mean * rho);
    records[k] = gain * mean * dt + noise[k];
  }

  Eigen::Vector3d v = pauli_trace<double>(next);
  bool projected = false;
  if (const double n = v.norm(); n > 1.0) {
    v /= n;
    projected = true;
  }
  return {density_from_bloch(BlochVector(v)), std::move(records), projected};
}

TrajectoryPoint Trajectory::point(std::size_t i) const {
  return {times[i], BlochVector(states[i]),
          std::vector<double>(records.begin() + i * channels,
                              records.begin() + (i + 1) * channels)};
}

Trajectory simulate_trajectory(const ModelSpec& model, const DensityMatrix& rho0,
                               double dt, double horizon, std::uint64_t seed,
                               const SimulationOptions& options) {
  if (!(dt > 0.0) || !(horizon > dt))
    throw InvalidState("need horizon > dt > 0");
  const std::size_t stride = std::max<std::size_t>(options.stride, 1);
  const auto steps = static_cast<std::uint64_t>(std::llround(horizon / dt));
  const std::size_t m = model.channels.size();
  const double sqdt = std::sqrt(dt);
  const CounterRng rng(seed);

  Trajectory traj;
  traj.seed = seed;
  traj.dt = dt;
  traj.channels = m;
  const std::size_t expected = steps / stride + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  traj.records.reserve(expected * m);

  auto keep = [&](double t, const Eigen::Vector3d& v, const std::vector<double>& acc) {
    traj.times.push_back(t);
    traj.states.push_back(v);
    traj.records.insert(traj.records.end(), acc.begin(), acc.end());
  };

  DensityMatrix rho = rho0;
  std::vector<double> noise(m), acc(m, 0.0);
  keep(0.0, pauli_trace<double>(rho.matrix()), acc);
  for (std::uint64_t n = 0; n < steps; ++n) {
    for (std::size_t k = 0; k < m; ++k)
      noise[k] = sqdt * rng.normal(n, static_cast<std::uint32_t>(k));
    auto step = step_ito(model, rho, dt, noise);
    rho = std::move(step.rho);
    traj.projections += step.projected;
    for (std::size_t k = 0; k < m; ++k) acc[k] += step.records[k];
    if ((n + 1) % stride == 0 || n + 1 == steps) {
      keep(static_cast<double>(n + 1) * dt, pauli_trace<double>(rho.matrix()), acc);
      std::fill(acc.begin(), acc.end(), 0.0);
    }
  }
  return traj;
}

std::size_t Ensemble::projections() const {
  std::size_t total = 0;
  for (const auto& t : trajectories) total += t.projections;
  return total;
}

std::vector<Eigen::Vector3d> Ensemble::final_states() const {
  std::vector<Eigen::Vector3d> out;
  out.reserve(trajectories.size());
  for (const auto& t : trajectories) out.push_back(t.final_state());
  return out;
}

Ensemble simulate_ensemble(const ModelSpec& model, const DensityMatrix& rho0,
                           double dt, double horizon, std::size_t n,
                           std::uint64_t base_seed, const SimulationOptions& options) {
  if (n < 1) throw InvalidState("ensemble size must be at least 1");
  Ensemble ens{model, dt, horizon, base_seed, std::vector<Trajectory>(n)};

  std::size_t workers = options.threads ? options.threads
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n && !failed;) {
      try {
        ens.trajectories[i] = simulate_trajectory(model, rho0, dt, horizon,
                                                  derive_seed(base_seed, i), options);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return ens;
}

}  // namespace qsde
