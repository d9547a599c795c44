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

#include <random>

#include "qsde/vector_fields.hpp"
#include "test_support.hpp"

using namespace qsde;
using qsde::testing::random_bloch;
using qsde::testing::random_matrix;

namespace {

Eigen::Vector3d bloch_of(const Matrix2c& tangent) { return pauli_trace<double>(tangent); }

Matrix2c rho_at(const Eigen::Vector3d& v) { return matrix_from_pauli<double>(v); }

// Largest pointwise gap between two fields at random points of the ball.
double field_gap(const VectorField& a, const VectorField& b, std::mt19937_64& g, int points = 100) {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const Eigen::Vector3d v = random_bloch(g);
    worst = std::max(worst, (a(v) - b(v)).cwiseAbs().maxCoeff());
  }
  return worst;
}

VectorField field(RealPolynomial x, RealPolynomial y, RealPolynomial z) {
  return VectorField(std::move(x), std::move(y), std::move(z));
}

const RealPolynomial X = RealPolynomial::variable(0);
const RealPolynomial Y = RealPolynomial::variable(1);
const RealPolynomial Z = RealPolynomial::variable(2);
const RealPolynomial One = RealPolynomial::constant(1.0);

}  // namespace

TEST_CASE("fields agree with the superoperators") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix2c L = random_matrix(g);
    Matrix2c H = random_matrix(g);
    H = (H + H.adjoint()).eval() / 2.0;
    const VectorField G = g_field(L), F = f_field(L), Hf = hamiltonian_field(H);
    CHECK(G.degree() <= 2);
    CHECK(F.degree() <= 1);
    CHECK(d_field(L).degree() <= 3);
    for (int i = 0; i < 20; ++i) {
      const Eigen::Vector3d v = random_bloch(g);
      const Matrix2c rho = rho_at(v);
      CHECK((G(v) - bloch_of(superop_G(L, rho))).norm() <= 1e-12);
      CHECK((F(v) - bloch_of(superop_F(L, rho))).norm() <= 1e-12);
      CHECK((Hf(v) - bloch_of(Complex(0, -1) * commutator(H, rho))).norm() <= 1e-12);
      CHECK((G(v) - 2.0 * g_pauli_coefficients(L, v)).norm() <= 1e-12);
    }
  }
}

TEST_CASE("Itô correction against a centred difference") {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix2c L = random_matrix(g);
    const VectorField G = g_field(L), D = d_field(L);
    const Eigen::Vector3d v = random_bloch(g, 0.9);
    const Eigen::Vector3d dir = G(v);
    const double h = 1e-5;
    const Eigen::Vector3d jg = (G(Eigen::Vector3d(v + h * dir)) - G(Eigen::Vector3d(v - h * dir))) / (2 * h);
    CHECK((D(v) + 0.5 * jg).norm() <= 1e-7 * (1.0 + jg.norm()));
  }
  CHECK(d_field(pauli::identity()).is_zero());
  const VectorField Df = drift_field(pauli::z(), 0.3);
  std::mt19937_64 h(3);
  CHECK(field_gap(Df, f_field(pauli::z()) + 0.3 * d_field(pauli::z()), h) <= 1e-14);
}

TEST_CASE("reference fields") {
  std::mt19937_64 g(13);
  CHECK(field_gap(f_field(pauli::z()), field(-2.0 * X, -2.0 * Y, RealPolynomial()), g) <= 1e-14);
  CHECK(f_field(pauli::minus())[2] == -1.0 * (One + Z));
  CHECK(g_field(pauli::identity()).is_zero());
  CHECK(g_field(Complex(0.5, -2.0) * pauli::identity()).is_zero());
  // Noise of σz: 2(−xz, −yz, 1 − z²).
  CHECK(field_gap(g_field(pauli::z()), 2.0 * field(-1.0 * X * Z, -1.0 * Y * Z, One - Z * Z), g) <=
        1e-14);
  // Noise of σ−: its z-component is −x(1 + z).
  CHECK(g_field(pauli::minus())[2] == -1.0 * (X + X * Z));
  // Adding a multiple of the identity leaves G unchanged.
  const Matrix2c L = random_matrix(g);
  CHECK(field_gap(g_field(L), g_field(L + Complex(1.5, 0.7) * pauli::identity()), g) <= 1e-13);
}

TEST_CASE("decomposition round trip") {
  std::mt19937_64 g(14);
  for (int i = 0; i < 100; ++i) {
    const Matrix2c L = random_matrix(g);
    CHECK(qsde::testing::max_abs(reconstruct(decompose(L)) - L) <= 1e-14);
  }
  const auto d = decompose(Complex(0, 1) * pauli::y());
  CHECK(d.real_part.norm() == 0.0);
  CHECK(d.imag_part.isApprox(Eigen::Vector3d(0, 1, 0)));
}

TEST_CASE("bracket algebra") {
  std::mt19937_64 g(15);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorField a = g_field(random_matrix(g)) + f_field(random_matrix(g));
    const VectorField b = d_field(random_matrix(g));
    const VectorField c = g_field(random_matrix(g));
    CHECK(lie_bracket(a, a).is_zero());
    CHECK(field_gap(lie_bracket(a, b), -1.0 * lie_bracket(b, a), g, 20) <= 1e-12);
    const VectorField jacobi = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                               lie_bracket(c, lie_bracket(a, b));
    CHECK(jacobi.max_abs_coefficient() <= 1e-10);
  }
  // Degree-1 and degree-3 combine to degree 3; a cap of 2 refuses it.
  CHECK_THROWS_AS(lie_bracket(f_field(pauli::z()), d_field(pauli::x()), 2), DegreeCapError);
  try {
    lie_bracket(d_field(pauli::x()), d_field(pauli::y()), 4, "[D_x, D_y]");
    FAIL("expected the degree cap to trigger");
  } catch (const DegreeCapError& e) {
    CHECK(std::string(e.what()).find("[D_x, D_y]") != std::string::npos);
  }
}

TEST_CASE("noise brackets follow operator commutators") {
  std::mt19937_64 g(16);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix2c A = random_matrix(g), B = random_matrix(g);
    const VectorField lhs = lie_bracket(g_field(A), g_field(B));
    const VectorField rhs = g_field(commutator(A, B));
    CHECK((lhs - rhs).cleanup(1e-10).is_zero());
  }
}

TEST_CASE("operator-level drift bracket") {
  std::mt19937_64 g(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix2c Lj = random_matrix(g), Lk = random_matrix(g);
    const double eta = std::uniform_real_distribution<double>(0.0, 1.0)(g);
    const VectorField direct = lie_bracket(drift_field(Lj, eta), g_field(Lk));
    CHECK(field_gap(drift_bracket(Lj, eta, Lk), direct, g) <= 1e-10);

    // The shortcut differs only along G_Lj and G_[Lk,Lj].
    const VectorField shortcut = drift_bracket_shortcut(Lj, eta, Lk);
    const VectorField Gj = g_field(Lj), Gc = g_field(commutator(Lk, Lj));
    for (int i = 0; i < 20; ++i) {
      const Eigen::Vector3d v = random_bloch(g, 0.95);
      Eigen::Matrix<double, 3, 2> span;
      span << Gj(v), Gc(v);
      const Eigen::Vector3d gap = shortcut(v) - direct(v);
      const Eigen::Vector3d rest = gap - span * span.colPivHouseholderQr().solve(gap);
      CHECK(rest.norm() <= 1e-9 * (1.0 + gap.norm()));
    }
  }
}

TEST_CASE("drift brackets of special operators") {
  std::mt19937_64 g(18);
  SUBCASE("commuting pair at unit efficiency") {
    for (int trial = 0; trial < 20; ++trial) {
      const Matrix2c Lj = random_matrix(g);
      const Complex a(std::normal_distribution<double>()(g), 0.3), b(-0.4, 1.1);
      const Matrix2c Lk = a * Lj + b * pauli::identity();
      const VectorField expected = g_field(0.5 * commutator(Lk, Lj.adjoint()) * Lj);
      const VectorField got = drift_bracket(Lj, 1.0, Lk);
      // Agreement holds up to the direction of G_Lj itself.
      const VectorField Gj = g_field(Lj);
      for (int i = 0; i < 20; ++i) {
        const Eigen::Vector3d v = random_bloch(g, 0.95);
        const Eigen::Vector3d gap = got(v) - expected(v), dir = Gj(v);
        const Eigen::Vector3d rest = gap - dir * (dir.dot(gap) / std::max(dir.squaredNorm(), 1e-300));
        CHECK(rest.norm() <= 1e-9 * (1.0 + gap.norm()));
      }
    }
  }
  SUBCASE("sigma minus with itself stays on its noise direction") {
    const VectorField b = drift_bracket(pauli::minus(), 0.6, pauli::minus());
    const VectorField n = g_field(pauli::minus());
    for (int i = 0; i < 50; ++i) {
      const Eigen::Vector3d v = random_bloch(g);
      CHECK(b(v).cross(n(v)).norm() <= 1e-12);
    }
  }
  SUBCASE("sigma z with itself stays on its noise direction") {
    const VectorField b = drift_bracket(pauli::z(), 0.4, pauli::z());
    const VectorField n = g_field(pauli::z());
    for (int i = 0; i < 50; ++i) {
      const Eigen::Vector3d v = random_bloch(g);
      CHECK(b(v).cross(n(v)).norm() <= 1e-12);
    }
  }
  SUBCASE("dephasing drift against decay noise") {
    // Exact bracket in this basis; the ground state sits at z = −1.
    const VectorField b = lie_bracket(f_field(pauli::z()), g_field(pauli::minus()));
    const VectorField expected =
        -2.0 * field(One + Z + X * X, X * Y, X + X * Z);
    CHECK(field_gap(b, expected, g) <= 1e-13);
    CHECK(field_gap(drift_bracket(pauli::z(), 0.0, pauli::minus()), expected, g) <= 1e-12);
  }
}
