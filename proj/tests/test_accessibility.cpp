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

#include "qsde/accessibility.hpp"
#include "qsde/catalog.hpp"
#include "qsde/sde.hpp"
#include "test_support.hpp"

using namespace qsde;

namespace {

const Complex kI(0.0, 1.0);
const Matrix2c I2 = Matrix2c::Identity();

ModelSpec single(const Matrix2c& L, double eta) {
  return make_model(Matrix2c::Zero(), {make_channel(L, eta)});
}

}  // namespace

TEST_CASE("Euler unitaries") {
  std::mt19937_64 g(21);
  std::uniform_real_distribution<double> a(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Matrix2c u = euler_unitary(a(g), a(g), a(g));
    CHECK(qsde::testing::max_abs(u * u.adjoint() - I2) <= 1e-14);
    CHECK(std::abs(u.determinant() - 1.0) <= 1e-14);
  }
}

TEST_CASE("curve criterion") {
  struct Case {
    Matrix2c L;
    bool curve;
    CanonicalForm form;
  };
  const Case cases[] = {
      {pauli::minus(), true, CanonicalForm::SigmaMinusLike},
      {Complex(2, -1) * pauli::plus(), true, CanonicalForm::SigmaMinusLike},
      {pauli::z(), true, CanonicalForm::SigmaZLike},
      {pauli::x() + 0.5 * I2, true, CanonicalForm::SigmaZLike},
      {Complex(0.3, 2.0) * pauli::y() + Complex(1, 1) * I2, true, CanonicalForm::SigmaZLike},
      {pauli::z() + pauli::minus(), false, CanonicalForm::None},
      {pauli::x() + kI * 0.4 * pauli::y(), false, CanonicalForm::None},
  };
  for (const auto& c : cases)
    for (auto order : {CommutatorOrder::LLdag, CommutatorOrder::LdagL}) {
      const auto v = curve_criterion(c.L, order);
      CHECK(v.curve == c.curve);
      CHECK(v.canonical_form == c.form);
      CHECK(v.normalizer_agrees);
    }
  // The fitted coefficient flips sign with the ordering.
  const auto a = curve_criterion(pauli::minus(), CommutatorOrder::LLdag);
  const auto b = curve_criterion(pauli::minus(), CommutatorOrder::LdagL);
  CHECK(a.r == doctest::Approx(-b.r));
  CHECK(std::abs(a.r) == doctest::Approx(1.0));

  // Rotating the basis keeps the verdict.
  std::mt19937_64 g(22);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const Matrix2c u = euler_unitary(ang(g), ang(g), ang(g));
    const auto v = curve_criterion(u * (Complex(1.2, 0.4) * pauli::minus()) * u.adjoint());
    CHECK(v.curve);
    CHECK(v.canonical_form == CanonicalForm::SigmaMinusLike);
    CHECK(v.residual <= 1e-10);
  }
  CHECK_THROWS_AS(curve_criterion(Matrix2c::Zero()), InvalidState);
}

TEST_CASE("basis normalizer") {
  const Matrix2c u = euler_unitary(0.7, 1.1, -0.4);
  const Matrix2c L = u * (0.8 * pauli::minus()) * u.adjoint();
  const auto hit = basis_normalizer(L, CanonicalForm::SigmaMinusLike);
  CHECK(hit.matched);
  const Matrix2c back = hit.unitary * L * hit.unitary.adjoint();
  CHECK(std::abs(back(0, 0)) + std::abs(back(0, 1)) + std::abs(back(1, 1)) <= 1e-4);
  CHECK_FALSE(basis_normalizer(L, CanonicalForm::SigmaZLike).matched);
  CHECK(basis_normalizer(u * pauli::z() * u.adjoint() + 2.0 * I2, CanonicalForm::SigmaZLike).matched);
  CHECK_FALSE(basis_normalizer(pauli::z() + pauli::minus(), CanonicalForm::SigmaMinusLike).matched);
}

TEST_CASE("noise-field dependence") {
  const Matrix2c sx = pauli::x(), sy = pauli::y(), sz = pauli::z();
  auto check = [](const std::vector<Matrix2c>& ops, DependenceOption option) {
    const auto v = g_dependence(ops);
    CHECK(v.option == option);
    CHECK(v.dependent == (option != DependenceOption::Independent));
    CHECK(v.numeric_agrees);
  };
  check({sz, 2.5 * sz + Complex(3, 1) * I2}, DependenceOption::Linear);
  // A complex multiple adds a rotation about the same axis.
  check({sz, Complex(2, 1) * sz}, DependenceOption::Independent);
  check({kI * sx, kI * sy, kI * sz}, DependenceOption::AllSkew);
  check({sz, sx}, DependenceOption::Independent);
  check({sz, pauli::minus()}, DependenceOption::Independent);
  const auto rp = g_dependence({sx + 0.5 * kI * sz, sz - 0.5 * kI * sx, kI * sy});
  CHECK(rp.option == DependenceOption::RotatedProjection);
  CHECK(std::abs(rp.beta) == doctest::Approx(0.5));
  CHECK_THROWS_AS(g_dependence({sz}), InvalidState);
}

TEST_CASE("interior samples and pointwise rank") {
  const auto pts = sample_interior(40, 5, 0.8);
  CHECK(pts.size() == 40);
  for (const auto& p : pts) CHECK(p.norm() <= 0.8);
  CHECK(sample_interior(40, 5, 0.8) == pts);

  const Eigen::Vector3d p(0.1, -0.2, 0.3);
  CHECK(pointwise_rank({g_field(pauli::z())}, p) == 1);
  CHECK(pointwise_rank({g_field(pauli::z()), g_field(2.0 * pauli::z())}, p) == 1);
  CHECK(pointwise_rank({g_field(pauli::z()), g_field(pauli::x())}, p) == 2);
  CHECK(pointwise_rank({g_field(pauli::z()), g_field(pauli::x()), f_field(pauli::minus())}, p) == 3);
  // Pure Hamiltonian flows are tangent to spheres.
  CHECK(pointwise_rank({hamiltonian_field(pauli::x()), hamiltonian_field(pauli::y()),
                        hamiltonian_field(pauli::z())},
                       p) == 2);
}

TEST_CASE("generators of a model") {
  const ModelSpec m = make_model(pauli::x(), {make_channel(pauli::z(), 0.0),
                                              make_channel(pauli::minus(), 0.6),
                                              make_channel(pauli::y(), 1.0)});
  CHECK(noise_generators(m).size() == 2);
  // F for η < 1, F + D for η > 0, plus H.
  CHECK(drift_generators(m).size() == 1 + 2 + 1 + 1);
}

TEST_CASE("closure ranks") {
  CHECK(lie_closure(preset(Preset::HoH, 1.0)).max_rank() == 1);
  CHECK(lie_closure(preset(Preset::HoN, 0.5)).max_rank() == 1);
  CHECK(lie_closure(preset(Preset::HeN, 1.0)).max_rank() == 2);
  CHECK(lie_closure(preset(Preset::HeH, 0.5)).max_rank() == 2);
  const ModelSpec dephase_homodyne =
      make_model(Matrix2c::Zero(), {make_channel(pauli::z(), 0.0), make_channel(pauli::minus(), 0.5)});
  const auto b = lie_closure(dephase_homodyne);
  CHECK(b.max_rank() == 2);
  CHECK(b.converged);
  CHECK(b.fields.size() == b.provenance.size());

  ClosureOptions tight;
  tight.degree_cap = 2;
  const auto capped = lie_closure(single(pauli::z() + pauli::minus(), 0.5), tight);
  CHECK_FALSE(capped.capped.empty());
}

TEST_CASE("dimension verdicts") {
  CHECK(dimension(single(pauli::minus(), 1.0)).dimension == 1);
  CHECK(dimension(single(pauli::z() + pauli::minus(), 1.0)).dimension == 2);
  CHECK(dimension(single(pauli::z() + pauli::minus(), 0.5)).dimension == 3);
  const auto v = dimension(preset(Preset::HeN, 0.5));
  CHECK(v.dimension == 2);
  CHECK(v.confidence == Confidence::ExactRank);
  CHECK(v.randomized_dimension == v.dimension);
  CHECK_FALSE(v.genericity_discrepancy);

  // Uniform rescaling of every operator and a shift by the identity change nothing.
  std::mt19937_64 g(23);
  for (int i = 0; i < 5; ++i) {
    const Matrix2c L = qsde::testing::random_matrix(g);
    const int d = dimension(single(L, 0.7)).dimension;
    CHECK(dimension(single(2.5 * L, 0.7)).dimension == d);
    CHECK(dimension(single(L + Complex(0.3, -0.2) * I2, 0.7)).dimension == d);
  }
}

TEST_CASE("principal components of a short cloud") {
  const Eigen::Vector3d start(0.3, 0.2, 0.4);
  // Over a short horizon the cloud follows the noise directions only, so the
  // count reflects the number of independent noise fields rather than the
  // accessible dimension.
  CHECK(pca_dimension(single(pauli::z() + pauli::minus(), 0.5), start, 3) == 1);
  CHECK(pca_dimension(preset(Preset::HeN, 1.0), start, 3) == 2);
  CHECK(pca_dimension(preset(Preset::HoH, 1.0), start, 3) == 1);
}

TEST_CASE("classification catalog") {
  const auto rep = catalog_check(2024, 12);
  for (const auto& r : rep.rows) {
    CAPTURE(r.group);
    CAPTURE(r.name);
    CAPTURE(r.obtained);
    CHECK(r.pass);
  }
  CHECK(rep.all_pass());
  CHECK(rep.failures() == 0);
  CHECK(rep.rows.size() > 80);
}
