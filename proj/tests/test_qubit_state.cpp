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

#include <doctest.h>

#include "qsde/model_io.hpp"
#include "qsde/qubit_state.hpp"
#include "qsde/vector_fields.hpp"
#include "test_support.hpp"

using namespace qsde;
using namespace qsde::testing;

namespace {
Matrix2c projector_e() { return DensityMatrix::excited().matrix(); }
Matrix2c projector_g() { return DensityMatrix::ground().matrix(); }
}  // namespace

TEST_CASE("bloch coordinates of reference states") {
  const auto e = bloch_from_density(DensityMatrix::excited());
  CHECK(e.vec().isApprox(Eigen::Vector3d(0, 0, 1)));
  CHECK(bloch_from_density(DensityMatrix::maximally_mixed()).vec().norm() == 0.0);

  Matrix2c m = (Matrix2c::Identity() + 0.6 * pauli::x() + 0.8 * pauli::z()) / 2.0;
  const auto v = bloch_from_density(DensityMatrix(m));
  CHECK(v.x() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(v.y() == doctest::Approx(0.0));
  CHECK(v.z() == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("density matrices of reference vectors") {
  CHECK(approx_equal(density_from_bloch(BlochVector(0, 0, -1)).matrix(), projector_g()));
  CHECK(approx_equal(density_from_bloch(BlochVector(0, 0, 0)).matrix(),
                     Matrix2c::Identity() / 2.0));
  CHECK(approx_equal(density_from_bloch(BlochVector(1, 0, 0)).matrix(),
                     (pauli::x() + Matrix2c::Identity()) / 2.0));
}

TEST_CASE("invalid states are rejected") {
  CHECK_THROWS_AS(BlochVector(1.0, 0.1, 0.0), InvalidState);
  CHECK_THROWS_AS(BlochVector(std::nan(""), 0.0, 0.0), InvalidState);
  Matrix2c not_hermitian = Matrix2c::Identity() / 2.0;
  not_hermitian(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix{not_hermitian}, InvalidState);
  CHECK_THROWS_AS(DensityMatrix{Matrix2c::Identity()}, InvalidState);
  Matrix2c outside = (Matrix2c::Identity() + 1.2 * pauli::z()) / 2.0;
  CHECK_THROWS_AS(DensityMatrix{outside}, InvalidState);
  CHECK_THROWS_AS(make_channel(pauli::z(), 1.5), InvalidState);
  CHECK_THROWS_AS(make_model(pauli::minus(), {}), InvalidState);
}

TEST_CASE("dissipator examples") {
  CHECK(max_abs(superop_F(pauli::z(), DensityMatrix::maximally_mixed())) == 0.0);
  CHECK(approx_equal(superop_F(pauli::minus(), DensityMatrix::excited()),
                     projector_g() - projector_e()));
  CHECK(max_abs(superop_F(pauli::minus(), DensityMatrix::ground())) == 0.0);
}

TEST_CASE("measurement superoperator examples") {
  CHECK(max_abs(superop_G(pauli::z(), DensityMatrix::excited())) == 0.0);
  // At the excited state the fluorescence noise points along x; it vanishes
  // only at the ground state.
  CHECK(approx_equal(superop_G(pauli::minus(), DensityMatrix::excited()), pauli::x()));
  CHECK(max_abs(superop_G(pauli::minus(), DensityMatrix::ground())) == 0.0);
  std::mt19937_64 g(1);
  for (int i = 0; i < 20; ++i)
    CHECK(max_abs(superop_G(Matrix2c::Identity(), random_density(g))) < 1e-15);
}

TEST_CASE("round trip between representations") {
  std::mt19937_64 g(2);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho = random_density(g);
    const DensityMatrix back = density_from_bloch(bloch_from_density(rho));
    worst = std::max(worst, max_abs(back.matrix() - rho.matrix()));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("superoperators are hermitian and traceless") {
  std::mt19937_64 g(3);
  for (int i = 0; i < 500; ++i) {
    const Matrix2c L = random_matrix(g);
    const DensityMatrix rho = random_density(g);
    for (const Matrix2c& s : {superop_F(L, rho), superop_G(L, rho)}) {
      CHECK(is_hermitian(s, 1e-12));
      CHECK(std::abs(s.trace()) <= 1e-12);
    }
  }
}

TEST_CASE("measurement superoperator ignores identity shifts") {
  std::mt19937_64 g(4);
  std::normal_distribution<double> n;
  for (int i = 0; i < 500; ++i) {
    const Matrix2c L = random_matrix(g);
    const DensityMatrix rho = random_density(g);
    const Complex a(n(g), n(g));
    CHECK(max_abs(superop_G(L + a * Matrix2c::Identity(), rho) - superop_G(L, rho)) <= 1e-12);
  }
}

TEST_CASE("Pauli coefficients of the measurement superoperator") {
  // For traceless L = a·σ + i b·σ: half the Bloch velocity of G_L(ρ) equals
  // a + v × b − (a·v) v.
  std::mt19937_64 g(5);
  for (int i = 0; i < 500; ++i) {
    const Matrix2c L = random_traceless(g);
    const Eigen::Vector3d v = random_bloch(g);
    const Eigen::Vector3d direct =
        0.5 * pauli_trace<double>(superop_G(L, density_from_bloch(BlochVector(v)).matrix()));
    const auto d = decompose(L);
    const Eigen::Vector3d by_hand =
        d.real_part + v.cross(d.imag_part) - d.real_part.dot(v) * v;
    CHECK((direct - by_hand).norm() <= 1e-12);
    CHECK((g_pauli_coefficients(L, v) - by_hand).norm() <= 1e-12);
  }
}

TEST_CASE("model JSON round trip") {
  const ModelSpec m = make_model(0.3 * pauli::x(), {make_channel(pauli::minus(), 0.24),
                                                    make_channel(Complex(0, 1) * pauli::z(), 1.0)});
  const auto j = model_to_json(m);
  CHECK(approx_equal(model_from_json(j), m, 0.0));
  CHECK(j["channels"][0]["operator"][1][0][0] == 1.0);

  auto no_h = j;
  no_h.erase("hamiltonian");
  CHECK(model_from_json(no_h).hamiltonian.norm() == 0.0);

  auto bad = j;
  bad["channels"][0]["efficiency"] = 2.0;
  CHECK_THROWS_AS(model_from_json(bad), InvalidState);
  bad = j;
  bad["channels"][0]["operator"] = "sigma";
  CHECK_THROWS_AS(model_from_json(bad), InvalidState);
}
