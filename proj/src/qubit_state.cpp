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

#include "qsde/qubit_state.hpp"

#include <cmath>
#include <sstream>

namespace qsde {

namespace {

bool finite(const Matrix2c& m) {
  for (int i = 0; i < 4; ++i)
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag()))
      return false;
  return true;
}

void check_ball(const Eigen::Vector3d& v, double tol) {
  if (!v.allFinite()) throw InvalidState("Bloch vector has non-finite entries");
  if (v.norm() > 1.0 + tol) {
    std::ostringstream os;
    os << "Bloch vector norm " << v.norm() << " exceeds 1";
    throw InvalidState(os.str());
  }
}

}  // namespace

bool approx_equal(const Matrix2c& a, const Matrix2c& b, double tol) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

BlochVector::BlochVector(double x, double y, double z, double tol)
    : BlochVector(Eigen::Vector3d(x, y, z), tol) {}

BlochVector::BlochVector(const Eigen::Vector3d& v, double tol) : v_(v) {
  check_ball(v_, tol);
}

DensityMatrix::DensityMatrix(const Matrix2c& m, double tol) : m_(m) {
  if (!finite(m)) throw InvalidState("density matrix has non-finite entries");
  if (!is_hermitian(m, tol)) throw InvalidState("density matrix is not Hermitian");
  if (std::abs(m.trace() - Complex(1, 0)) > tol)
    throw InvalidState("density matrix trace differs from 1");
  check_ball(pauli_trace<double>(m), tol);
}

DensityMatrix DensityMatrix::from_pauli_unchecked(const Eigen::Vector3d& v) {
  DensityMatrix d;
  d.m_ = matrix_from_pauli<double>(v);
  return d;
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  return BlochVector(pauli_trace<double>(rho.matrix()));
}

DensityMatrix density_from_bloch(const BlochVector& v) {
  return DensityMatrix(matrix_from_pauli<double>(v.vec()));
}

LindbladChannel make_channel(const Matrix2c& op, double efficiency) {
  if (!finite(op)) throw InvalidState("channel operator has non-finite entries");
  if (!(efficiency >= 0.0 && efficiency <= 1.0))
    throw InvalidState("channel efficiency must lie in [0, 1]");
  return {op, efficiency};
}

ModelSpec make_model(const Matrix2c& hamiltonian,
                     std::vector<LindbladChannel> channels) {
  if (!finite(hamiltonian)) throw InvalidState("Hamiltonian has non-finite entries");
  if (!is_hermitian(hamiltonian)) throw InvalidState("Hamiltonian is not Hermitian");
  for (auto& c : channels) c = make_channel(c.op, c.efficiency);
  return {hamiltonian, std::move(channels)};
}

bool approx_equal(const ModelSpec& a, const ModelSpec& b, double tol) {
  if (a.channels.size() != b.channels.size()) return false;
  if (!approx_equal(a.hamiltonian, b.hamiltonian, tol)) return false;
  for (std::size_t k = 0; k < a.channels.size(); ++k) {
    if (!approx_equal(a.channels[k].op, b.channels[k].op, tol)) return false;
    if (std::abs(a.channels[k].efficiency - b.channels[k].efficiency) > tol)
      return false;
  }
  return true;
}

}  // namespace qsde
