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

#include "qsde/vector_fields.hpp"

namespace qsde {

namespace {

const ComplexPolynomial& var(int i) {
  static const std::array<ComplexPolynomial, 3> v = {ComplexPolynomial::variable(0),
                                                      ComplexPolynomial::variable(1),
                                                      ComplexPolynomial::variable(2)};
  return v[i];
}

ComplexPolynomial conj(const ComplexPolynomial& p) {
  ComplexPolynomial::Terms t;
  for (const auto& [e, c] : p.terms()) t[e] = std::conj(c);
  return ComplexPolynomial(std::move(t));
}

// G_A(ρ) with ρ and A both polynomial.
PolyMatrix2 superop_g(const PolyMatrix2& A, const PolyMatrix2& rho) {
  const PolyMatrix2 s = A * rho + rho * A.adjoint();
  return s - s.trace() * rho;
}

PolyMatrix2 superop_f(const Matrix2c& L, const PolyMatrix2& rho) {
  const PolyMatrix2 l(L), ld(Matrix2c(L.adjoint())), ldl(Matrix2c(L.adjoint() * L));
  const auto half = ComplexPolynomial::constant(0.5);
  return l * rho * ld - half * (ldl * rho + rho * ldl);
}

}  // namespace

OperatorDecomposition decompose(const Matrix2c& L) {
  const std::array<Matrix2c, 3> s = {pauli::x(), pauli::y(), pauli::z()};
  OperatorDecomposition d;
  for (int k = 0; k < 3; ++k) {
    const Complex c = (L * s[k]).trace() / 2.0;
    d.real_part[k] = c.real();
    d.imag_part[k] = c.imag();
  }
  d.trace_part = L.trace() / 2.0;
  return d;
}

Matrix2c reconstruct(const OperatorDecomposition& d) {
  const Complex i(0, 1);
  return (d.real_part.x() + i * d.imag_part.x()) * pauli::x() +
         (d.real_part.y() + i * d.imag_part.y()) * pauli::y() +
         (d.real_part.z() + i * d.imag_part.z()) * pauli::z() +
         d.trace_part * Matrix2c::Identity();
}

PolyMatrix2::PolyMatrix2(const Matrix2c& m) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e_[2 * i + j] = ComplexPolynomial::constant(m(i, j));
}

PolyMatrix2 PolyMatrix2::adjoint() const {
  PolyMatrix2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = conj((*this)(j, i));
  return a;
}

PolyMatrix2 operator+(PolyMatrix2 a, const PolyMatrix2& b) {
  for (int k = 0; k < 4; ++k) a.e_[k] += b.e_[k];
  return a;
}

PolyMatrix2 operator-(PolyMatrix2 a, const PolyMatrix2& b) {
  for (int k = 0; k < 4; ++k) a.e_[k] -= b.e_[k];
  return a;
}

PolyMatrix2 operator*(const PolyMatrix2& a, const PolyMatrix2& b) {
  PolyMatrix2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return c;
}

PolyMatrix2 operator*(const ComplexPolynomial& s, PolyMatrix2 a) {
  for (auto& e : a.e_) e = s * e;
  return a;
}

PolyMatrix2 density_polynomial() {
  const Complex i(0, 1);
  const auto half = ComplexPolynomial::constant(0.5);
  PolyMatrix2 rho;
  rho(0, 0) = half + Complex(0.5) * var(2);
  rho(1, 1) = half - Complex(0.5) * var(2);
  rho(0, 1) = Complex(0.5) * var(0) - (0.5 * i) * var(1);
  rho(1, 0) = Complex(0.5) * var(0) + (0.5 * i) * var(1);
  return rho;
}

VectorField bloch_field(const PolyMatrix2& m) {
  const Complex i(0, 1);
  // tr(Mσx) = m01 + m10, tr(Mσy) = i(m01 − m10), tr(Mσz) = m00 − m11
  VectorField f(real_part(m(0, 1) + m(1, 0)), real_part(i * (m(0, 1) - m(1, 0))),
                real_part(m(0, 0) - m(1, 1)));
  return f.cleanup(kTolerances.coefficient_cleanup);
}

VectorField g_field(const Matrix2c& L) {
  const auto d = decompose(L);
  const Eigen::Vector3d& a = d.real_part;
  const Eigen::Vector3d& b = d.imag_part;
  const auto x = RealPolynomial::variable(0), y = RealPolynomial::variable(1),
             z = RealPolynomial::variable(2);
  const RealPolynomial dot = a.x() * x + a.y() * y + a.z() * z;
  VectorField f(RealPolynomial::constant(a.x()) - b.y() * z + b.z() * y - dot * x,
                RealPolynomial::constant(a.y()) - b.z() * x + b.x() * z - dot * y,
                RealPolynomial::constant(a.z()) - b.x() * y + b.y() * x - dot * z);
  f *= 2.0;
  return f.cleanup(kTolerances.coefficient_cleanup);
}

Eigen::Vector3d g_pauli_coefficients(const Matrix2c& L, const Eigen::Vector3d& v) {
  const auto d = decompose(L);
  const Eigen::Vector3d& a = d.real_part;
  const Eigen::Vector3d& b = d.imag_part;
  const double s = a.dot(v);
  return {a.x() - b.y() * v.z() + b.z() * v.y() - s * v.x(),
          a.y() - b.z() * v.x() + b.x() * v.z() - s * v.y(),
          a.z() - b.x() * v.y() + b.y() * v.x() - s * v.z()};
}

VectorField f_field(const Matrix2c& L) {
  return bloch_field(superop_f(L, density_polynomial()));
}

VectorField d_field(const Matrix2c& L) {
  const VectorField g = g_field(L);
  VectorField d = g.directional(g);
  d *= -0.5;
  return d.cleanup(kTolerances.coefficient_cleanup);
}

VectorField hamiltonian_field(const Matrix2c& H) {
  const PolyMatrix2 rho = density_polynomial(), h(H);
  const auto mi = ComplexPolynomial::constant(Complex(0, -1));
  return bloch_field(mi * (h * rho - rho * h));
}

VectorField drift_field(const Matrix2c& L, double eta) {
  VectorField f = f_field(L);
  if (eta != 0.0) f += eta * d_field(L);
  return f.cleanup(kTolerances.coefficient_cleanup);
}

namespace {

PolyMatrix2 sandwich(const Matrix2c& Lj, const Matrix2c& Lk, const PolyMatrix2& rho) {
  const PolyMatrix2 c(commutator(Lj, Lk)), ljd(Matrix2c(Lj.adjoint()));
  PolyMatrix2 s = c * rho * ljd;
  s = s - s.trace() * rho;
  return s + s.adjoint();
}

VectorField assemble(const Matrix2c& Lj, double eta, const Matrix2c& Lk,
                     const VectorField& monitored) {
  const PolyMatrix2 rho = density_polynomial();
  const Matrix2c q1 = 0.5 * commutator(Lk, Matrix2c(Lj.adjoint() * Lj));
  VectorField out;
  if (eta != 1.0) {
    out = bloch_field(sandwich(Lj, Lk, rho)) + g_field(q1);
    out *= 1.0 - eta;
  }
  if (eta != 0.0) out += eta * monitored;
  return out.cleanup(kTolerances.coefficient_cleanup);
}

}  // namespace

VectorField drift_bracket(const Matrix2c& Lj, double eta_j, const Matrix2c& Lk) {
  if (!(eta_j >= 0.0 && eta_j <= 1.0)) throw InvalidState("efficiency must lie in [0, 1]");
  const PolyMatrix2 rho = density_polynomial();
  const PolyMatrix2 lj(Lj), lk(Lk), ljd(Matrix2c(Lj.adjoint())), lkd(Matrix2c(Lk.adjoint()));
  const PolyMatrix2 id(Matrix2c::Identity());
  const ComplexPolynomial tj = (lj * rho + rho * ljd).trace();
  const PolyMatrix2 sk = lk * rho + rho * lkd;
  const ComplexPolynomial tk = sk.trace();
  const ComplexPolynomial half = ComplexPolynomial::constant(0.5);

  const PolyMatrix2 inner = (half * (ljd + lj) - tj * id) * lj;
  const ComplexPolynomial weight = ((lj + ljd) * sk).trace() - tj * tk;
  const PolyMatrix2 q = (lk * inner - inner * lk) + weight * lj;
  return assemble(Lj, eta_j, Lk, bloch_field(superop_g(q, rho)));
}

VectorField drift_bracket_shortcut(const Matrix2c& Lj, double eta_j, const Matrix2c& Lk) {
  if (!(eta_j >= 0.0 && eta_j <= 1.0)) throw InvalidState("efficiency must lie in [0, 1]");
  const Matrix2c q2 = 0.5 * commutator(Lk, Matrix2c((Lj.adjoint() + Lj) * Lj));
  return assemble(Lj, eta_j, Lk, g_field(q2));
}

}  // namespace qsde
