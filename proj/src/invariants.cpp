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

#include "qsde/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace qsde {

namespace {

struct Named {
  const char* name;
  InvariantTag tag;
};
constexpr Named kNames[] = {
    {"B_heh", InvariantTag::B_heh}, {"C_hen", InvariantTag::C_hen},
    {"B_hoh", InvariantTag::B_hoh}, {"C_hon", InvariantTag::C_hon},
    {"F_hon", InvariantTag::F_hon}, {"Phi", InvariantTag::Phi},
    {"Chi", InvariantTag::Chi},     {"W", InvariantTag::W},
    {"StrSurfC", InvariantTag::StrSurfC},
};

double guarded(double denom, double guard, const char* what) {
  if (std::abs(denom) < guard) throw PoleError(std::string(what) + " is singular here");
  return denom;
}

bool has_law(InvariantTag t) {
  return t == InvariantTag::B_heh || t == InvariantTag::C_hen ||
         t == InvariantTag::B_hoh || t == InvariantTag::C_hon ||
         t == InvariantTag::F_hon || t == InvariantTag::StrSurfC;
}

}  // namespace

InvariantKind parse_invariant(const std::string& name, double beta) {
  for (const auto& n : kNames)
    if (name == n.name) return {n.tag, beta};
  throw InvalidState("unknown invariant kind '" + name + "'");
}

std::string invariant_name(InvariantKind kind) {
  for (const auto& n : kNames)
    if (n.tag == kind.tag) return n.name;
  return "?";
}

double eval_invariant(InvariantKind kind, const Eigen::Vector3d& v, double eta,
                      double pole_guard) {
  const double x = v.x(), y = v.y(), z = v.z();
  const double r2 = x * x + y * y;
  const double up = 1.0 + z;
  switch (kind.tag) {
    case InvariantTag::B_heh:
    case InvariantTag::B_hoh:
      return r2 / guarded(1.0 - z * z, pole_guard, "b");
    case InvariantTag::C_hen: {
      const double s = guarded(up, pole_guard, "c");
      return (s - r2 / 2.0) / (s * s);
    }
    case InvariantTag::C_hon: {
      const double s = guarded(up, pole_guard, "c");
      return (s - x * x / 2.0) / (s * s);
    }
    case InvariantTag::F_hon:
      return y / guarded(up, pole_guard, "f");
    case InvariantTag::Phi: {
      if (!(eta > 0.0)) throw InvalidState("phi needs a positive efficiency");
      const double s = guarded(up, pole_guard, "phi");
      return r2 / (eta * s * s);
    }
    case InvariantTag::Chi: {
      if (!(eta > 0.0)) throw InvalidState("chi needs a positive efficiency");
      const double s = guarded(up, pole_guard, "chi");
      return x * x / (2.0 * eta * s * s);
    }
    case InvariantTag::W:
      guarded(1.0 - z * z, pole_guard, "w");
      return std::atanh(z);
    case InvariantTag::StrSurfC: {
      if (!std::isfinite(kind.beta)) throw InvalidState("beta must be finite");
      const double d = guarded(y + kind.beta, pole_guard, "surface constant");
      return (1.0 - r2 - z * z) / (d * d);
    }
  }
  throw InvalidState("bad invariant tag");
}

double predict_invariant(InvariantKind kind, double value0, double eta, double t) {
  if (!(t >= 0.0)) throw InvalidState("time must be non-negative");
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidState("efficiency must lie in [0, 1]");
  switch (kind.tag) {
    case InvariantTag::B_heh: return value0 * std::exp(-8.0 * (1.0 - eta) * t);
    case InvariantTag::B_hoh: return value0 * std::exp(-4.0 * (1.0 - eta) * t);
    case InvariantTag::C_hen:
      return (value0 - eta / 2.0) * std::exp(2.0 * t) + eta / 2.0;
    case InvariantTag::C_hon:
      return (value0 - eta / 2.0) * std::exp(t) + eta / 2.0;
    case InvariantTag::F_hon: return value0 * std::exp(t / 2.0);
    case InvariantTag::StrSurfC: return value0;
    default:
      throw InvalidState("'" + invariant_name(kind) +
                         "' has no closed-form time evolution");
  }
}

Preset matching_preset(InvariantKind kind) {
  switch (kind.tag) {
    case InvariantTag::B_heh: return Preset::HeH;
    case InvariantTag::C_hen: return Preset::HeN;
    case InvariantTag::B_hoh: return Preset::HoH;
    case InvariantTag::C_hon:
    case InvariantTag::F_hon: return Preset::HoN;
    default:
      throw InvalidState("'" + invariant_name(kind) + "' has no matching preset");
  }
}

ConfinementReport confinement_check(const Trajectory& traj, InvariantKind kind,
                                    double eta) {
  if (!has_law(kind.tag))
    throw InvalidState("'" + invariant_name(kind) + "' has no evolution law to check");
  if (traj.size() == 0) throw InvalidState("empty trajectory");

  ConfinementReport rep;
  rep.kind = invariant_name(kind);
  rep.eta = eta;
  const double v0 = eval_invariant(kind, traj.state(0), eta);
  double lo = v0, hi = v0, sq = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    double obs;
    try {
      obs = eval_invariant(kind, traj.state(i), eta);
    } catch (const PoleError&) {
      rep.pole_hit = true;
      break;
    }
    const double t = traj.times[i];
    const double pred = predict_invariant(kind, v0, eta, t);
    const double res = std::abs(obs - pred);
    rep.max_residual = std::max(rep.max_residual, res);
    sq += res * res;
    lo = std::min(lo, pred);
    hi = std::max(hi, pred);
    rep.predicted_path.emplace_back(t, pred);
    rep.observed_path.emplace_back(t, obs);
    ++rep.samples;
  }
  rep.rms_residual = std::sqrt(sq / static_cast<double>(rep.samples));
  const double last = rep.predicted_path.back().second;
  rep.scale = std::max({hi - lo, std::abs(v0), std::abs(last), 1e-12});
  rep.normalized_max = rep.max_residual / rep.scale;
  rep.normalized_rms = rep.rms_residual / rep.scale;
  return rep;
}

double quadratic_variation(const Trajectory& traj, InvariantKind kind, double eta) {
  double qv = 0.0;
  double prev = eval_invariant(kind, traj.state(0), eta);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    double cur;
    try {
      cur = eval_invariant(kind, traj.state(i), eta);
    } catch (const PoleError&) {
      break;
    }
    qv += (cur - prev) * (cur - prev);
    prev = cur;
  }
  return qv;
}

}  // namespace qsde
