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

#include "qsde/catalog.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qsde/invariants.hpp"
#include "qsde/rng.hpp"
#include "qsde/sde.hpp"

namespace qsde {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0, 1);

Matrix2c I2() { return Matrix2c::Identity(); }

// Deterministic parameter source: each call consumes one counter block.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = rng_.uniforms(step_++, 0)[0];
    return lo + (hi - lo) * u;
  }
  /// Uniform over the union of disjoint intervals (equal weight per unit length).
  double pick(std::initializer_list<std::pair<double, double>> spans) {
    double total = 0.0;
    for (const auto& [a, b] : spans) total += b - a;
    double u = uniform(0.0, total);
    for (const auto& [a, b] : spans) {
      if (u <= b - a) return a + u;
      u -= b - a;
    }
    return spans.begin()->second;
  }
  Complex complex(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
  Matrix2c unitary() {
    return euler_unitary(uniform(0, 2 * kPi), uniform(0, kPi), uniform(0, 2 * kPi));
  }

 private:
  CounterRng rng_;
  std::uint64_t step_ = 0;
};

ModelSpec model_of(std::vector<std::pair<Matrix2c, double>> ops, const Matrix2c& basis = I2()) {
  std::vector<LindbladChannel> ch;
  for (auto& [L, eta] : ops) ch.push_back({basis * L * basis.adjoint(), eta});
  return make_model(Matrix2c::Zero(), std::move(ch));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::string fmt(const Complex& c) {
  std::ostringstream os;
  os.precision(4);
  os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
  return os.str();
}

std::string describe_matrix(const Matrix2c& m) {
  return "[[" + fmt(m(0, 0)) + ", " + fmt(m(0, 1)) + "], [" + fmt(m(1, 0)) + ", " +
         fmt(m(1, 1)) + "]]";
}

// Pair families of the two-operator catalog at unit efficiency, drawn with
// generic parameters (angles kept away from values where the two operators
// become proportional or collapse onto a one-dimensional case).
std::pair<Matrix2c, Matrix2c> pair_family(char tag, Draws& d) {
  const Matrix2c sx = pauli::x(), sy = pauli::y(), sz = pauli::z();
  const double th = d.pick({{0.3, 0.65}, {0.95, 1.35}});
  const double r1 = d.uniform(-0.8, 0.8), r2 = d.uniform(-0.8, 0.8);
  const Complex c1 = d.complex(-0.8, 0.8), c2 = d.complex(-0.8, 0.8);
  switch (tag) {
    case 'A':
      return {sz + r1 * I2(), std::cos(th) * sz + std::sin(th) * sx + r2 * I2()};
    case 'B': return {kI * sz + c1 * I2(), sx + r2 * I2()};
    case 'C':
      return {kI * sz + c1 * I2(), kI * (std::cos(th) * sz + std::sin(th) * sx) + c2 * I2()};
    case 'D': {
      const double th2 = d.pick({{0.3, 1.3}, {1.8, 2.8}});
      return {std::cos(th) * sx + kI * std::sin(th) * sy + r1 * I2(),
              std::cos(th2) * sx + std::sin(th2) * sz + r2 * I2()};
    }
    case 'E':
      return {std::cos(th) * sx + kI * std::sin(th) * sy + r1 * I2(), kI * sy + c2 * I2()};
    case 'F': {
      const double b1 = d.pick({{-0.8, -0.2}, {0.2, 0.8}, {1.3, 2.0}});
      const double b2 = d.pick({{-0.8, -0.2}, {0.2, 0.8}, {1.3, 2.0}});
      return {sx + b1 * kI * sy + r1 * I2(),
              std::cos(th) * sx + std::sin(th) * sz + b2 * kI * sy + r2 * I2()};
    }
    case 'G': {
      const double t2 = d.pick({{1.0, 1.5}, {1.9, 2.6}});
      const double phi = th - t2;
      return {std::cos(th) * sx + kI * sy + std::sin(th) * kI * I2(),
              std::cos(t2) * sx + kI * (std::cos(phi) * sy + std::sin(phi) * sz) +
                  std::sin(t2) * kI * I2()};
    }
  }
  throw InvalidState("unknown pair family");
}

Matrix2c single_real(Draws& d) {
  const double beta = d.pick({{-0.8, -0.2}, {0.2, 0.8}, {1.3, 2.0}});
  const double r = d.uniform(-0.8, 0.8);
  return pauli::x() + kI * beta * pauli::y() + r * I2();
}

Matrix2c single_imaginary(Draws& d) {
  const double r = d.pick({{-0.9, -0.2}, {0.2, 0.9}});
  return pauli::x() + kI * std::sqrt(1.0 + r * r) * pauli::y() + r * kI * I2();
}

}  // namespace

std::string describe_model(const ModelSpec& model) {
  std::string s;
  if (model.hamiltonian.norm() > 0.0) s += "H=" + describe_matrix(model.hamiltonian) + "; ";
  for (std::size_t k = 0; k < model.channels.size(); ++k) {
    if (k) s += "; ";
    s += "L" + std::to_string(k + 1) + "=" + describe_matrix(model.channels[k].op) +
         " eta=" + fmt(model.channels[k].efficiency);
  }
  return s;
}

bool CatalogReport::all_pass() const { return failures() == 0; }

std::size_t CatalogReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += !r.pass;
  return n;
}

CatalogReport catalog_check(std::uint64_t seed, int samples) {
  CatalogReport rep;
  rep.seed = seed;
  rep.samples = samples;
  Draws draws(seed);
  const Matrix2c sx = pauli::x(), sy = pauli::y(), sz = pauli::z(), sm = pauli::minus();

  auto dim_row = [&](const std::string& group, const std::string& name, const ModelSpec& m,
                     int expected) {
    CatalogRow row{group, name, "dimension", describe_model(m), std::to_string(expected), "", false, ""};
    try {
      const auto v = dimension(m, samples, seed);
      row.obtained = std::to_string(v.dimension);
      row.pass = v.dimension == expected;
      row.note = confidence_name(v.confidence);
      if (v.genericity_discrepancy)
        row.note += "; randomized drift gives " + std::to_string(v.randomized_dimension);
    } catch (const std::exception& e) {
      row.obtained = "error";
      row.note = e.what();
    }
    rep.rows.push_back(row);
  };

  // Homodyne and heterodyne presets.
  for (double eta : {0.5, 1.0}) {
    for (Preset p : {Preset::HoH, Preset::HoN, Preset::HeH, Preset::HeN}) {
      const int expected = (p == Preset::HoH || p == Preset::HoN) ? 1 : 2;
      dim_row("presets", preset_name(p) + " eta=" + fmt(eta), preset(p, eta), expected);
    }
  }

  // Single operators confined to a curve.
  dim_row("curve", "sigma_minus", model_of({{sm, 0.5}}), 1);
  dim_row("curve", "3 sz + (2+i) I", model_of({{3.0 * sz + Complex(2, 1) * I2(), 0.5}}), 1);
  dim_row("curve", "(1+i) sz", model_of({{Complex(1, 1) * sz, 0.5}}), 1);
  for (int k = 0; k < 2; ++k) {
    const Matrix2c u = draws.unitary();
    const Complex c1 = draws.complex(-1.5, 1.5), c2 = draws.complex(-1, 1);
    dim_row("curve", "c1 sigma_minus, rotated basis #" + std::to_string(k + 1),
            model_of({{c1 * sm, draws.uniform(0.2, 1.0)}}, u), 1);
    dim_row("curve", "c1 sz + c2 I, rotated basis #" + std::to_string(k + 1),
            model_of({{c1 * sz + c2 * I2(), draws.uniform(0.2, 1.0)}}, u), 1);
  }
  struct CurveCase {
    const char* name;
    Matrix2c L;
    bool curve;
    CanonicalForm form;
  };
  const CurveCase curves[] = {
      {"sigma_minus", sm, true, CanonicalForm::SigmaMinusLike},
      {"sz + sigma_minus", sz + sm, false, CanonicalForm::None},
      {"3 sz + (2+i) I", 3.0 * sz + Complex(2, 1) * I2(), true, CanonicalForm::SigmaZLike},
  };
  for (const auto& c : curves) {
    for (auto order : {CommutatorOrder::LLdag, CommutatorOrder::LdagL}) {
      const auto v = curve_criterion(c.L, order);
      CatalogRow row{"curve",
                     std::string(c.name) + (order == CommutatorOrder::LLdag ? " [L,L+]L" : " [L+,L]L"),
                     "curve", "L=" + describe_matrix(c.L),
                     std::string(c.curve ? "curve " : "no curve ") + canonical_form_name(c.form), "", false, ""};
      row.obtained = std::string(v.curve ? "curve " : "no curve ") +
                     canonical_form_name(v.canonical_form);
      row.pass = v.curve == c.curve && v.canonical_form == c.form && v.normalizer_agrees;
      row.note = "residual " + fmt(v.residual);
      rep.rows.push_back(row);
    }
  }

  // Several operators sharing one traceless part.
  for (int k = 0; k < 3; ++k) {
    const Complex c0 = draws.complex(-1, 1);
    std::vector<std::pair<Matrix2c, double>> ops;
    for (int j = 0; j < 3; ++j)
      ops.push_back({c0 * sz + draws.complex(-1, 1) * I2(), draws.uniform(0.2, 0.9)});
    dim_row("shared-traceless", "c0 sz + cj I, draw " + std::to_string(k + 1), model_of(ops, draws.unitary()), 1);
  }

  // Single monitored operator, unit and partial efficiency.
  for (int k = 0; k < 3; ++k) {
    const Matrix2c u = k == 0 ? I2() : draws.unitary();
    const Matrix2c a = single_real(draws), b = single_imaginary(draws);
    const std::string tag = " draw " + std::to_string(k + 1);
    dim_row("single-operator", "sx + i beta sy + r I, eta=1" + tag, model_of({{a, 1.0}}, u), 2);
    dim_row("single-operator", "sx + i sqrt(1+r^2) sy + i r I, eta=1" + tag, model_of({{b, 1.0}}, u), 2);
    dim_row("single-operator", "sx + i beta sy + r I, eta=0.5" + tag, model_of({{a, 0.5}}, u), 3);
    dim_row("single-operator", "sx + i sqrt(1+r^2) sy + i r I, eta=0.5" + tag, model_of({{b, 0.5}}, u), 3);
  }

  // Several monitored operators at partial efficiency.
  for (double eta : {0.3, 0.7}) {
    const Matrix2c u = draws.unitary();
    std::vector<std::pair<Matrix2c, double>> zfam, mfam;
    for (int j = 0; j < 2; ++j) {
      zfam.push_back({draws.complex(-1, 1) * sz + draws.complex(-1, 1) * I2(), eta});
      mfam.push_back({draws.complex(-1, 1) * sm, eta});
    }
    dim_row("shared-form", "beta_k sz + alpha_k I, eta=" + fmt(eta), model_of(zfam, u), 2);
    dim_row("shared-form", "beta_k sigma_minus, eta=" + fmt(eta), model_of(mfam, u), 2);
  }
  {
    const double r1 = 0.3, r2 = -0.4, th = kPi / 3;
    dim_row("shared-form", "pair [A] theta=pi/3, eta=0.5",
            model_of({{sz + r1 * I2(), 0.5}, {std::cos(th) * sz + std::sin(th) * sx + r2 * I2(), 0.5}}),
            3);
    dim_row("shared-form", "pair [C] theta=pi/3, eta=0.5",
            model_of({{kI * sz, 0.5}, {kI * (std::cos(th) * sz + std::sin(th) * sx), 0.5}}), 3);
    dim_row("shared-form", "sz and sigma_minus monitored, eta=0.5", model_of({{sz, 0.5}, {sm, 0.5}}), 3);
  }

  // Unmonitored dephasing next to fluorescence monitoring.
  for (double eta : {0.3, 0.7}) {
    dim_row("dephasing-fluorescence", "homodyne, eta=" + fmt(eta), model_of({{sz, 0.0}, {sm, eta}}), 2);
    dim_row("dephasing-fluorescence", "heterodyne, eta=" + fmt(eta),
            model_of({{sz, 0.0}, {sm, eta}, {kI * sm, eta}}), 3);
  }

  // Worked examples.
  dim_row("mixed-curve", "sz + sigma_minus, eta=1", model_of({{sz + sm, 1.0}}), 2);
  dim_row("mixed-curve", "sz + sigma_minus, eta=0.5", model_of({{sz + sm, 0.5}}), 3);
  dim_row("mixed-phase", "sigma_minus + i sx, eta=1", model_of({{sm + kI * sx, 1.0}}), 3);
  {
    const Matrix2c a = pauli::x() + kI * 0.3 * pauli::y() + 0.4 * I2();
    dim_row("heterodyne", "heterodyne of sx + 0.3i sy + 0.4 I, eta=1",
            model_of({{a, 1.0}, {kI * a, 1.0}}), 3);
    dim_row("heterodyne", "heterodyne of sigma_minus, eta=1", preset(Preset::HeN, 1.0), 2);
  }

  // Pair families at unit efficiency.
  for (char tag : std::string("ABCDEFG")) {
    for (int k = 0; k < 3; ++k) {
      const auto [l1, l2] = pair_family(tag, draws);
      const Matrix2c u = k == 0 ? I2() : draws.unitary();
      dim_row("pairs", std::string("[") + tag + "] draw " + std::to_string(k + 1),
              model_of({{l1, 1.0}, {l2, 1.0}}, u), 2);
    }
  }

  // Noise-field dependence options.
  {
    struct DepCase {
      std::string name;
      std::vector<Matrix2c> ops;
      DependenceOption option;
    };
    std::vector<DepCase> cases = {
        {"sz, 2 sz", {sz, 2.0 * sz}, DependenceOption::Linear},
        {"i sx, i sy, i sz", {kI * sx, kI * sy, kI * sz}, DependenceOption::AllSkew},
        {"sz, sx", {sz, sx}, DependenceOption::Independent},
    };
    for (double beta : {0.3, 1.0, 2.0})
      cases.push_back({"sx + b i sz, sz - b i sx, i sy (b=" + fmt(beta) + ")",
                       {sx + beta * kI * sz, sz - beta * kI * sx, kI * sy},
                       DependenceOption::RotatedProjection});
    for (const auto& c : cases) {
      const auto v = g_dependence(c.ops);
      CatalogRow row{"dependence", c.name, "dependence", c.name, dependence_option_name(c.option),
                     dependence_option_name(v.option), false, ""};
      row.pass = v.option == c.option && v.numeric_agrees;
      row.note = "numeric rank " + std::to_string(v.numeric_rank);
      rep.rows.push_back(row);
    }
  }

  // The unit-efficiency algebra of sz + sigma_minus contains three operator
  // directions yet stays two-dimensional pointwise.
  {
    const auto basis = lie_closure(model_of({{sz + sm, 1.0}}), {samples, seed});
    auto fields = basis.fields;
    for (const Matrix2c& L : {Matrix2c(sx), Matrix2c(kI * sy), Matrix2c(sz)}) fields.push_back(g_field(L));
    int worst = 0;
    for (const auto& p : basis.sample_points) worst = std::max(worst, pointwise_rank(fields, p));
    CatalogRow row{"mixed-curve", "span(G_sx, G_isy, G_sz) inside the closure", "span",
                   "L=sz+sigma_minus eta=1", "2", std::to_string(worst), false, ""};
    row.pass = worst == 2 && basis.max_rank() == 2;
    rep.rows.push_back(row);
  }

  // Simulation checks.
  {
    const double dt = 1e-5, horizon = 0.5;
    SimulationOptions opt;
    opt.stride = 100;
    const Matrix2c l1 = kI * sz + Complex(0.2, 0.5) * I2();
    const Matrix2c l2 =
        kI * (std::cos(0.7) * sz + std::sin(0.7) * sx) + Complex(-0.3, 0.1) * I2();
    const ModelSpec m = model_of({{l1, 1.0}, {l2, 1.0}});
    const Eigen::Vector3d v0(0.3, 0.2, 0.1);
    const auto ens = simulate_ensemble(m, density_from_bloch(BlochVector(v0)), dt, horizon, 4,
                                       seed, opt);
    double drift = 0.0;
    for (const auto& t : ens.trajectories)
      for (std::size_t i = 0; i < t.size(); ++i)
        drift = std::max(drift, std::abs(t.state(i).squaredNorm() - v0.squaredNorm()));
    CatalogRow row{"unitary-pair", "[C] at eta=1 conserves x^2+y^2+z^2", "simulation",
                   describe_model(m), "<= 2e-2", fmt(drift), false, ""};
    // Euler steps conserve the radius only in mean; the per-path spread grows
    // like sqrt(2 dt horizon) times the squared noise amplitude.
    row.pass = drift <= 2e-2;
    row.note = "dt=1e-5, horizon 0.5, 4 paths";
    rep.rows.push_back(row);

    const ModelSpec s = model_of({{sz + sm, 1.0}});
    const Eigen::Vector3d w0(0.2, 0.5, 0.1);
    const InvariantKind kind{InvariantTag::StrSurfC, 0.0};
    const double c0 = eval_invariant(kind, w0, 1.0);
    const auto ens2 = simulate_ensemble(s, density_from_bloch(BlochVector(w0)), dt, horizon, 4,
                                        seed + 1, opt);
    double rel = 0.0;
    for (const auto& t : ens2.trajectories)
      for (std::size_t i = 0; i < t.size(); ++i)
        rel = std::max(rel, std::abs(eval_invariant(kind, t.state(i), 1.0) - c0) / c0);
    CatalogRow row2{"mixed-curve", "(1-|v|^2)/y^2 conserved for sz + sigma_minus at eta=1",
                    "simulation", describe_model(s), "<= 5e-2", fmt(rel), false, ""};
    row2.pass = rel <= 5e-2;
    row2.note = "relative drift; dt=1e-5, horizon 0.5, 4 paths";
    rep.rows.push_back(row2);
  }
  return rep;
}

}  // namespace qsde
