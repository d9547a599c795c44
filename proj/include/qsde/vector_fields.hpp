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

#include <array>

#include "qsde/polynomial.hpp"
#include "qsde/qubit_state.hpp"

namespace qsde {

/// L = a·σ + i b·σ + t I with real 3-vectors a (real part) and b (skew part).
struct OperatorDecomposition {
  Eigen::Vector3d real_part = Eigen::Vector3d::Zero();
  Eigen::Vector3d imag_part = Eigen::Vector3d::Zero();
  Complex trace_part{0.0, 0.0};
};

OperatorDecomposition decompose(const Matrix2c& L);
Matrix2c reconstruct(const OperatorDecomposition& d);

/// 2×2 matrix whose entries are complex polynomials in the Bloch coordinates.
class PolyMatrix2 {
 public:
  PolyMatrix2() = default;
  explicit PolyMatrix2(const Matrix2c& m);

  ComplexPolynomial& operator()(int i, int j) { return e_[2 * i + j]; }
  const ComplexPolynomial& operator()(int i, int j) const { return e_[2 * i + j]; }

  PolyMatrix2 adjoint() const;
  ComplexPolynomial trace() const { return e_[0] + e_[3]; }

  friend PolyMatrix2 operator+(PolyMatrix2 a, const PolyMatrix2& b);
  friend PolyMatrix2 operator-(PolyMatrix2 a, const PolyMatrix2& b);
  friend PolyMatrix2 operator*(const PolyMatrix2& a, const PolyMatrix2& b);
  friend PolyMatrix2 operator*(const ComplexPolynomial& s, PolyMatrix2 a);

 private:
  std::array<ComplexPolynomial, 4> e_;
};

/// ρ(x, y, z) = (I + xσx + yσy + zσz)/2.
PolyMatrix2 density_polynomial();

/// Bloch-coordinate field of a traceless Hermitian polynomial matrix:
/// component k is Re tr(M σk).
VectorField bloch_field(const PolyMatrix2& m);

/// Velocity field of the noise G_L in Bloch coordinates (twice the Pauli
/// coefficients, since ρ = (I + v·σ)/2). The trace part of L is irrelevant.
VectorField g_field(const Matrix2c& L);
/// Pauli coefficients of G_L(ρ) at a point: (α − b_y z + b_z y − (a·v) x, …).
Eigen::Vector3d g_pauli_coefficients(const Matrix2c& L, const Eigen::Vector3d& v);

/// Lindblad dissipator F_L in Bloch coordinates (affine).
VectorField f_field(const Matrix2c& L);
/// Itô-to-Stratonovich correction −½ J_G G of a unit-efficiency channel.
VectorField d_field(const Matrix2c& L);
/// −i[H, ρ] in Bloch coordinates.
VectorField hamiltonian_field(const Matrix2c& H);
/// Stratonovich drift of one channel: F_L + η D_L.
VectorField drift_field(const Matrix2c& L, double eta);

/// [F_Lj + η D_Lj, G_Lk] assembled at the operator level:
/// (1−η)(S + G_{Q1}) + η G_{Q(ρ)}(ρ) where S = [Lj,Lk]ρLj† − tr(·)ρ + h.c.,
/// Q1 = ½[Lk, Lj†Lj] and Q(ρ) carries the ρ-dependent terms exactly.
VectorField drift_bracket(const Matrix2c& Lj, double eta_j, const Matrix2c& Lk);

/// Same assembly with the ρ-dependent part replaced by the constant
/// Q2 = ½[Lk, (Lj†+Lj)Lj]. It differs from the exact bracket by fields
/// pointwise in the span of G_Lj and G_[Lk,Lj].
VectorField drift_bracket_shortcut(const Matrix2c& Lj, double eta_j, const Matrix2c& Lk);

}  // namespace qsde
