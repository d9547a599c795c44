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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsde/vector_fields.hpp"

namespace qsde {

enum class CanonicalForm { SigmaMinusLike, SigmaZLike, None };
std::string canonical_form_name(CanonicalForm f);

/// Which commutator ordering to test; the two differ by a sign only.
enum class CommutatorOrder { LLdag, LdagL };

struct CurveVerdict {
  bool curve = false;
  CanonicalForm canonical_form = CanonicalForm::None;
  double r = 0.0;          ///< fitted real coefficient
  Complex c{0.0, 0.0};     ///< fitted identity coefficient
  double residual = 0.0;   ///< relative least-squares residual
  bool normalizer_agrees = true;  ///< unitary search found the same form
};

/// Tests [L, L†]L = rL + cI with r real and c complex by least squares.
CurveVerdict curve_criterion(const Matrix2c& L, CommutatorOrder order = CommutatorOrder::LLdag);

/// SU(2) matrix Rz(a)·Ry(b)·Rz(c).
Matrix2c euler_unitary(double a, double b, double c);

struct NormalizerResult {
  bool matched = false;
  double residual = 0.0;  ///< squared off-form entries of U L U†, relative to |L|²
  Matrix2c unitary = Matrix2c::Identity();
};

/// Searches SU(2) (Nelder–Mead over three Euler angles, deterministic
/// restarts) for a basis in which L has the requested form:
/// c·σ− for SigmaMinusLike, c1·σz + c2·I for SigmaZLike.
NormalizerResult basis_normalizer(const Matrix2c& L, CanonicalForm target,
                                  int restarts = 20, double tol = kTolerances.rank);

enum class DependenceOption { Linear, AllSkew, RotatedProjection, Independent };
std::string dependence_option_name(DependenceOption o);

struct DependenceVerdict {
  bool dependent = false;
  DependenceOption option = DependenceOption::Independent;
  double beta = 0.0;              ///< common factor of the rotated-projection case
  int numeric_rank = 0;           ///< max rank of the noise fields over random points
  bool numeric_agrees = true;
};

/// Whether the noise fields of 2 or 3 operators are linearly dependent at
/// every state; traces are removed first.
DependenceVerdict g_dependence(const std::vector<Matrix2c>& operators, std::uint64_t seed = 11);

/// Uniform points of the ball of radius `radius`, away from the poles.
std::vector<Eigen::Vector3d> sample_interior(int count, std::uint64_t seed, double radius = 0.9);

/// Rank of the field values at p after column normalization; singular values
/// below threshold × largest count as zero.
int pointwise_rank(const std::vector<VectorField>& fields, const Eigen::Vector3d& p,
                   double threshold = kTolerances.rank);

struct NamedField {
  VectorField field;
  std::string name;
};

/// Noise fields of the monitored channels.
std::vector<NamedField> noise_generators(const ModelSpec& model);

/// Drift generators treated independently: per channel F (η < 1) and F + D
/// (η > 0), plus the Hamiltonian field when H ≠ 0.
std::vector<NamedField> drift_generators(const ModelSpec& model);

struct ClosureOptions {
  int sample_count = 12;
  std::uint64_t seed = 7;
  int max_depth = 6;
  int degree_cap = kDefaultDegreeCap;
  double rank_threshold = kTolerances.rank;
};

struct LieBasis {
  std::vector<VectorField> fields;
  std::vector<std::string> provenance;
  std::vector<Eigen::Vector3d> sample_points;
  std::vector<int> pointwise_ranks;
  bool converged = true;
  int depth = 0;
  std::vector<std::string> capped;  ///< brackets skipped at the degree cap

  int max_rank() const;
};

/// Grows a basis of the drift-preserved algebra, keeping a bracket only when
/// it raises the pointwise rank somewhere on the sample set.
LieBasis lie_closure(const std::vector<NamedField>& noise,
                     const std::vector<NamedField>& drifts,
                     const ClosureOptions& options = {});
LieBasis lie_closure(const ModelSpec& model, const ClosureOptions& options = {});

enum class Confidence { ExactRank, MonteCarloCorroborated };
std::string confidence_name(Confidence c);

/// The closure did not settle and the Monte Carlo check disagrees.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DimensionVerdict {
  int dimension = 0;
  Confidence confidence = Confidence::ExactRank;
  std::vector<Eigen::Vector3d> sample_points;
  LieBasis basis;
  /// Max rank over closures with one combined drift at randomized
  /// efficiencies and channel weights.
  int randomized_dimension = 0;
  bool genericity_discrepancy = false;
  std::optional<int> pca_components;
};

/// Principal components of a short Monte Carlo cloud above `floor` times the
/// leading variance.
int pca_dimension(const ModelSpec& model, const Eigen::Vector3d& start, std::uint64_t seed,
                  double dt = 1e-5, double horizon = 0.01, std::size_t n = 2000,
                  double floor = 0.05);

DimensionVerdict dimension(const ModelSpec& model, int sample_count = 12,
                           std::uint64_t seed = 7);

}  // namespace qsde
