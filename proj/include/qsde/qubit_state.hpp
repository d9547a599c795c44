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

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qsde/tolerances.hpp"

namespace qsde {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using ComplexMatrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

/// Raised when a value violates a domain invariant (trace, hermiticity, ball).
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Basis ordering is (|e>, |g>), so sigma_z = diag(1, -1) and sigma_minus = |g><e|.
namespace pauli {
inline Matrix2c identity() { return Matrix2c::Identity(); }
inline Matrix2c x() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix2c y() {
  Matrix2c m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix2c z() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}
inline Matrix2c minus() {
  Matrix2c m;
  m << 0, 0, 1, 0;
  return m;
}
inline Matrix2c plus() {
  Matrix2c m;
  m << 0, 1, 0, 0;
  return m;
}
}  // namespace pauli

/// Real parts of trace(M sigma_k), k = x, y, z.
///
/// For a density matrix this is its Bloch vector; for a traceless hermitian
/// tangent vector dρ it is the Bloch-coordinate velocity.
template <typename Scalar>
Vector3<Scalar> pauli_trace(const ComplexMatrix2<Scalar>& m) {
  // trace(M sx) = m01 + m10, trace(M sy) = i(m01 - m10), trace(M sz) = m00 - m11
  const std::complex<Scalar> i(0, 1);
  return Vector3<Scalar>(std::real(m(0, 1) + m(1, 0)),
                         std::real(i * (m(0, 1) - m(1, 0))),
                         std::real(m(0, 0) - m(1, 1)));
}

/// (I + x sx + y sy + z sz) / 2
template <typename Scalar>
ComplexMatrix2<Scalar> matrix_from_pauli(const Vector3<Scalar>& v) {
  using C = std::complex<Scalar>;
  ComplexMatrix2<Scalar> m;
  m << C(Scalar(1) + v.z(), 0), C(v.x(), -v.y()), C(v.x(), v.y()),
      C(Scalar(1) - v.z(), 0);
  return m / Scalar(2);
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  double tol = kTolerances.algebraic) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool approx_equal(const Matrix2c& a, const Matrix2c& b,
                  double tol = kTolerances.algebraic);

inline Matrix2c commutator(const Matrix2c& a, const Matrix2c& b) {
  return a * b - b * a;
}

/// Point of the closed unit ball.
class BlochVector {
 public:
  BlochVector() = default;
  BlochVector(double x, double y, double z,
              double tol = kTolerances.algebraic);
  explicit BlochVector(const Eigen::Vector3d& v,
                       double tol = kTolerances.algebraic);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Eigen::Vector3d& vec() const { return v_; }

  double norm() const { return v_.norm(); }
  /// cylindrical radius sqrt(x^2 + y^2)
  double r() const { return std::hypot(v_.x(), v_.y()); }
  double theta() const { return std::atan2(v_.y(), v_.x()); }

  friend bool operator==(const BlochVector&, const BlochVector&) = default;

 private:
  Eigen::Vector3d v_ = Eigen::Vector3d::Zero();
};

/// Hermitian, unit-trace, positive semidefinite 2x2 matrix.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Matrix2c::Identity() / 2.0) {}
  explicit DensityMatrix(const Matrix2c& m, double tol = kTolerances.algebraic);

  const Matrix2c& matrix() const { return m_; }

  static DensityMatrix excited() { return from_pauli_unchecked({0, 0, 1}); }
  static DensityMatrix ground() { return from_pauli_unchecked({0, 0, -1}); }
  static DensityMatrix maximally_mixed() { return DensityMatrix(); }

 private:
  static DensityMatrix from_pauli_unchecked(const Eigen::Vector3d& v);
  Matrix2c m_;
};

BlochVector bloch_from_density(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& v);

/// F_L(ρ) = LρL† − ½L†Lρ − ½ρL†L
template <typename Derived>
Matrix2c superop_F(const Matrix2c& L, const Eigen::MatrixBase<Derived>& rho) {
  const Matrix2c LdL = L.adjoint() * L;
  return L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL);
}

/// G_L(ρ) = Lρ + ρL† − trace(Lρ + ρL†) ρ
template <typename Derived>
Matrix2c superop_G(const Matrix2c& L, const Eigen::MatrixBase<Derived>& rho) {
  const Matrix2c s = L * rho + rho * L.adjoint();
  return s - s.trace() * rho;
}

inline Matrix2c superop_F(const Matrix2c& L, const DensityMatrix& rho) {
  return superop_F(L, rho.matrix());
}
inline Matrix2c superop_G(const Matrix2c& L, const DensityMatrix& rho) {
  return superop_G(L, rho.matrix());
}

struct LindbladChannel {
  Matrix2c op;
  double efficiency = 0.0;  ///< η in [0, 1]
};

LindbladChannel make_channel(const Matrix2c& op, double efficiency);

struct ModelSpec {
  Matrix2c hamiltonian = Matrix2c::Zero();
  std::vector<LindbladChannel> channels;

  std::size_t channel_count() const { return channels.size(); }
};

/// Validates hermiticity of H and efficiency ranges.
ModelSpec make_model(const Matrix2c& hamiltonian,
                     std::vector<LindbladChannel> channels);

bool approx_equal(const ModelSpec& a, const ModelSpec& b,
                  double tol = kTolerances.algebraic);

}  // namespace qsde
