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

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "qsde/distributions.hpp"
#include "qsde/invariants.hpp"
#include "qsde/special.hpp"

using namespace qsde;

namespace {

constexpr double kPi = std::numbers::pi;

double integral(const std::function<double(double)>& f, double a, double b) {
  return integrate(f, a, b, 1e-14, 1e-12).value;
}

using Density = std::function<double(double)>;

// Residual of ∂P/∂τ = L[P] on a grid, relative to the largest |∂P/∂τ|.
// `make(τ)` builds the density at one time; `generator(P, u, τ)` applies L.
template <typename Make, typename Generator>
double forward_residual(Make make, Generator generator, double tau,
                        const std::vector<double>& grid) {
  const double ht = 1e-4 * tau;
  const Density before = make(tau - ht), now = make(tau), after = make(tau + ht);
  double worst = 0.0, scale = 0.0;
  for (double u : grid) {
    const double dt = (after(u) - before(u)) / (2 * ht);
    scale = std::max(scale, std::abs(dt));
    worst = std::max(worst, std::abs(dt - generator(now, u, tau)));
  }
  return worst / scale;
}

// (a P)'' − (b P)' by central differences.
template <typename Diffusion, typename Drift>
double fokker_planck(const Density& p, double u, Diffusion a, Drift b) {
  const double h = 1e-3;
  auto diff = [&](double x) { return a(x) * p(x); };
  auto flux = [&](double x) { return b(x) * p(x); };
  return (diff(u + h) - 2 * diff(u) + diff(u - h)) / (h * h) - (flux(u + h) - flux(u - h)) / (2 * h);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

}  // namespace

TEST_CASE("wrapped Gaussian in the azimuth") {
  const double theta0 = 0.4, eta = 0.7;
  for (double tau : {0.05, 0.8, 3.0}) {
    CHECK(integral([&](double t) { return pdf_heh_theta(t, tau, theta0, eta, 10); }, theta0 - kPi,
                   theta0 + kPi) == doctest::Approx(1.0).epsilon(1e-8));
    for (double d : {0.1, 1.0, 2.5})
      CHECK(pdf_heh_theta(theta0 + d, tau, theta0, eta) ==
            doctest::Approx(pdf_heh_theta(theta0 - d, tau, theta0, eta)).epsilon(1e-12));
  }
  for (double t : {-2.0, 0.0, 1.5})
    CHECK(pdf_heh_theta(t, 200.0, theta0, eta) == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-10));
  // The image sum and the Fourier series meet at variance 1.
  const double tau = 1.0 / eta;
  CHECK(pdf_heh_theta(1.0, tau * (1 - 1e-9), theta0, eta) ==
        doctest::Approx(pdf_heh_theta(1.0, tau * (1 + 1e-9), theta0, eta)).epsilon(1e-9));
  CHECK_THROWS_AS(pdf_heh_theta(0.0, 0.0, theta0, eta), InvalidState);
}

TEST_CASE("two-Gaussian mixture in w") {
  const double z0 = 0.6, w0 = std::atanh(z0);
  CHECK(heh_w_weight_ratio(w0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(integral([&](double w) { return pdf_heh_w(w, 0.7, w0, 0.8); }, -30.0, 30.0) ==
        doctest::Approx(1.0).epsilon(1e-8));
  for (double tau : {0.1, 1.0, 10.0}) {
    CHECK(heh_w_southern_mass(tau, 0.0, 0.6) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pdf_heh_w(1.3, tau, 0.0, 0.6) == doctest::Approx(pdf_heh_w(-1.3, tau, 0.0, 0.6)));
  }
  CHECK(heh_w_southern_mass(200.0, w0, 1.0) == doctest::Approx((1 - z0) / 2).epsilon(1e-10));
  CHECK(cdf_heh_w(0.4, 0.7, w0, 0.8) ==
        doctest::Approx(integral([&](double w) { return pdf_heh_w(w, 0.7, w0, 0.8); }, -30.0, 0.4))
            .epsilon(1e-10));
}

TEST_CASE("fluorescence heterodyne density in phi") {
  for (double eta : {0.3, 1.0})
    for (double tau : {0.5, 1.0, 3.0}) {
      const HenPhiSeries s(tau, 0.0, 0.5, eta);
      double worst = 0.0;
      for (double phi : linspace(0.0, 20.0, 201))
        worst = std::max(worst, std::abs(s(phi) -
                                         pdf_hen_phi_origin(phi, tau, eta)));
      CHECK(worst <= 1e-6);
    }

  const double phi0 = 1.5, c0 = 0.8, eta = 0.6, tau = 0.9;
  const HenPhiSeries s(tau, phi0, c0, eta);
  CHECK(s.normalization() ==
        doctest::Approx((2 * c0 + eta * phi0) * std::exp(phi0)).epsilon(1e-6));
  CHECK(integral([&](double p) { return s(p); }, 0.0, 40.0) ==
        doctest::Approx(1.0).epsilon(1e-6));

  // Late times: the n = 0 term leaves only the linear prefactor.
  const double late = 12.0;
  const HenPhiSeries l(late, phi0, c0, eta);
  auto flat = [&](double p) { return l(p) / (2 * c0 - eta + eta * (p + 1) * std::exp(-late)); };
  CHECK(flat(5.0) / flat(0.0) == doctest::Approx(1.0).epsilon(1e-3));

  CHECK_THROWS_AS(HenPhiSeries(0.05, phi0, c0, eta), TruncationError);
  CHECK_THROWS_AS(HenPhiSeries(1.0, phi0, 0.2, eta), InvalidState);
  CHECK(std::isfinite(pdf_hen_phi(1.0, 1.0, phi0, c0, eta, 3)));
}

TEST_CASE("latitude density") {
  const double tau = 0.7;
  for (double lambda : linspace(-1.4, 1.4, 29)) {
    const double s = std::sin(lambda);
    const double phi = (1 - s) / (1 + s);
    const double jac = 2 * std::cos(lambda) / ((1 + s) * (1 + s));
    CHECK(pdf_hen_latitude(lambda, tau) ==
          doctest::Approx(pdf_hen_phi_origin(phi, tau, 1.0) * jac).epsilon(1e-10));
  }
  CHECK(integral([&](double l) { return pdf_hen_latitude(l, tau); }, -kPi / 2, kPi / 2) ==
        doctest::Approx(1.0).epsilon(1e-6));
  double prev = 0.0;
  for (double t : {0.2, 0.5, 1.0, 2.0, 4.0}) {
    const double south = integral([&](double l) { return pdf_hen_latitude(l, t); }, -kPi / 2, 0.0);
    CHECK(south > prev);
    prev = south;
  }
}

TEST_CASE("latitude mass against simulation") {
  // Fraction of the southern hemisphere after t_sim = 0.3 (formula time 0.6).
  const std::size_t n = 2000;
  const auto ens = simulate_ensemble(preset(Preset::HeN, 1.0), DensityMatrix::excited(), 1e-4, 0.3,
                                     n, 404);
  double south = 0.0;
  for (const auto& v : ens.final_states()) south += v.z() < 0.0;
  south /= n;
  const double predicted = integral(
      [](double l) { return pdf_hen_latitude(l, 2.0 * 0.3); }, -kPi / 2, 0.0);
  CHECK(std::abs(south - predicted) <= 3.0 * std::sqrt(predicted * (1 - predicted) / n));
}

TEST_CASE("homodyne fluorescence density in chi") {
  const double tau = 0.8, eta = 0.5, c0 = 0.7;
  for (double chi0 : {0.0, 0.6}) {
    const HonChiSeries s(tau, chi0, c0, eta);
    const double mass = integral([&](double r) { return s.density_sqrt(r); }, 0.0, 5.5);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
  // Leading coefficients at χ0 = 0 with the e^{−τ} damping removed.
  const HonChiSeries regular(tau, 0.0, c0, eta, 60, ChiBranch::Regular);
  CHECK(regular.series().coefficients()[0] * std::exp(tau) ==
        doctest::Approx(2.0 / std::sqrt(kPi)).epsilon(1e-13));
  const HonChiSeries singular(tau, 0.0, c0, eta);
  CHECK(singular.series().coefficients()[3] * std::exp(4 * tau) ==
        doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-13));
  CHECK(std::isinf(singular(0.0)));
  CHECK(regular(0.0) > 0.0);
}

TEST_CASE("forward equations") {
  SUBCASE("azimuth: heat equation") {
    const double eta = 0.6, theta0 = 0.2;
    auto make = [&](double tau) -> Density {
      return [=](double t) { return pdf_heh_theta(t, tau, theta0, eta); };
    };
    auto gen = [&](const Density& p, double t, double) {
      return fokker_planck(p, t, [&](double) { return eta / 2; }, [](double) { return 0.0; });
    };
    CHECK(forward_residual(make, gen, 0.5, linspace(-2.5, 2.5, 41)) <= 1e-4);
  }
  SUBCASE("w: drifted diffusion") {
    const double eta = 0.8, w0 = 0.3;
    auto make = [&](double tau) -> Density {
      return [=](double w) { return pdf_heh_w(w, tau, w0, eta); };
    };
    auto gen = [&](const Density& p, double w, double) {
      return fokker_planck(p, w, [&](double) { return eta / 2; },
                           [&](double u) { return eta * std::tanh(u); });
    };
    CHECK(forward_residual(make, gen, 0.6, linspace(-3.0, 3.0, 41)) <= 1e-4);
  }
  SUBCASE("phi: fluorescence heterodyne") {
    // Simulation clock t = τ/2: ∂P/∂t = 2(φP)'' − (b P)' with
    // b = 2(1 + φ + ηφ/(c_t + ηφ/2)).
    const double eta = 0.7, phi0 = 0.8, c0 = 0.9;
    auto make = [&](double tau) -> Density {
      auto s = std::make_shared<HenPhiSeries>(tau, phi0, c0, eta);
      return [s](double phi) { return (*s)(phi); };
    };
    auto gen = [&](const Density& p, double phi, double tau) {
      const double c = predict_invariant({InvariantTag::C_hen}, c0, eta, tau / 2);
      return fokker_planck(p, phi, [](double u) { return 2 * u; },
                           [&](double u) { return 2 * (1 + u + eta * u / (c + eta * u / 2)); }) /
             2;
    };
    CHECK(forward_residual(make, gen, 1.0, linspace(0.05, 8.0, 41)) <= 1e-4);
  }
  SUBCASE("chi: fluorescence homodyne") {
    // Formula and simulation clocks coincide: ∂P/∂t = (χP)'' − (b P)' with
    // b = χ + 1/2 + 2ηχ/(c_t + ηχ).
    const double eta = 0.5, chi0 = 0.4, c0 = 0.75;
    auto make = [&](double tau) -> Density {
      auto s = std::make_shared<HonChiSeries>(tau, chi0, c0, eta);
      return [s](double chi) { return (*s)(chi); };
    };
    auto gen = [&](const Density& p, double chi, double tau) {
      const double c = predict_invariant({InvariantTag::C_hon}, c0, eta, tau);
      return fokker_planck(p, chi, [](double u) { return u; },
                           [&](double u) { return u + 0.5 + 2 * eta * u / (c + eta * u); });
    };
    CHECK(forward_residual(make, gen, 0.9, linspace(0.25, 6.0, 41)) <= 1e-4);
  }
}

TEST_CASE("the literal chi series fails its forward equation") {
  const double eta = 0.5, chi0 = 0.4, c0 = 0.75;
  auto make = [&](double tau) -> Density {
    auto s = std::make_shared<HonChiSeries>(tau, chi0, c0, eta, 60, ChiBranch::Regular);
    return [s](double chi) { return (*s)(chi); };
  };
  auto gen = [&](const Density& p, double chi, double tau) {
    const double c = predict_invariant({InvariantTag::C_hon}, c0, eta, tau);
    return fokker_planck(p, chi, [](double u) { return u; },
                         [&](double u) { return u + 0.5 + 2 * eta * u / (c + eta * u); });
  };
  CHECK(forward_residual(make, gen, 0.9, linspace(0.25, 6.0, 41)) > 1e-2);
}

TEST_CASE("tabulated distributions") {
  DistributionParams p;
  p.eta = 0.5;
  p.c0 = 0.625;
  for (auto c : {DistributionCase::HehTheta, DistributionCase::HehW, DistributionCase::HenPhi,
                 DistributionCase::HenLatitude, DistributionCase::HonChi}) {
    CAPTURE(distribution_case_name(c));
    DistributionParams q = p;
    if (c == DistributionCase::HenLatitude || c == DistributionCase::HenPhi) q.eta = 1.0, q.c0 = 0.5;
    const ClosedFormDistribution d(c, q, 1.0);
    CHECK(d.tabulated_mass() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(d.cdf(d.lower()) <= 1e-15);
    CHECK(d.cdf(d.upper()) == doctest::Approx(1.0).epsilon(1e-12));
    double prev = 0.0;
    for (double u : linspace(d.lower(), d.upper(), 50)) {
      CHECK(d.cdf(u) >= prev);
      prev = d.cdf(u);
    }
    for (double prob : {0.05, 0.5, 0.95})
      CHECK(std::abs(d.cdf(d.quantile(prob)) - prob) <= 1e-5);
    CHECK(parse_distribution_case(distribution_case_name(c)) == c);
  }
}

TEST_CASE("Kolmogorov–Smirnov utilities") {
  DistributionParams p;
  p.w0 = 0.2;
  p.eta = 0.9;
  const ClosedFormDistribution d(DistributionCase::HehW, p, 1.0);
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> samples(4000);
  for (auto& s : samples) s = d.quantile(u(g));
  const double ks = ks_statistic(samples, [&](double w) { return d.cdf(w); });
  CHECK(ks <= 1.63 / std::sqrt(4000.0));
  CHECK(kolmogorov_p(1.36 / std::sqrt(4000.0), 4000) == doctest::Approx(0.05).epsilon(0.05));
  CHECK(kolmogorov_p(0.0, 100) == doctest::Approx(1.0));
  CHECK(kolmogorov_p(0.5, 100) < 1e-10);
}

TEST_CASE("Monte Carlo comparison guards") {
  DistributionParams p;
  const ClosedFormDistribution d(DistributionCase::HehW, p, 1.0);
  Ensemble empty;
  empty.model = preset(Preset::HoH, 1.0);
  CHECK_THROWS_AS(compare_mc(d, empty), InvalidState);
  const auto wrong = simulate_ensemble(preset(Preset::HoN, 1.0), DensityMatrix::maximally_mixed(),
                                       1e-3, 0.01, 4, 1);
  CHECK_THROWS_AS(compare_mc(d, wrong), InvalidState);
  const auto right = simulate_ensemble(preset(Preset::HoH, 1.0), DensityMatrix::maximally_mixed(),
                                       1e-3, 0.01, 4, 1);
  CHECK_THROWS_AS(compare_mc(d, right, CoordinateMap::Phi), InvalidState);
  CHECK(map_coordinate(CoordinateMap::W, Eigen::Vector3d(0, 0, 1), 1.0) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("start states realize their parameters") {
  DistributionParams p;
  p.eta = 0.6;
  p.phi0 = 1.2;
  p.c0 = 0.9;
  p.chi0 = 0.7;
  p.w0 = -0.4;
  const auto phi_start = start_state(DistributionCase::HenPhi, p);
  CHECK(eval_invariant({InvariantTag::Phi}, phi_start, p.eta) == doctest::Approx(1.2));
  CHECK(eval_invariant({InvariantTag::C_hen}, phi_start, p.eta) == doctest::Approx(0.9));
  const auto chi_start = start_state(DistributionCase::HonChi, p);
  CHECK(eval_invariant({InvariantTag::Chi}, chi_start, p.eta) == doctest::Approx(0.7));
  CHECK(eval_invariant({InvariantTag::C_hon}, chi_start, p.eta) == doctest::Approx(0.9));
  CHECK(std::atanh(start_state(DistributionCase::HehW, p).z()) == doctest::Approx(-0.4));
  p.c0 = 0.31;
  CHECK_THROWS_AS(start_state(DistributionCase::HenPhi, p), InvalidState);
}

TEST_CASE("clock calibration recovers the default on a small run") {
  DistributionParams p;
  p.w0 = std::atanh(std::sin(0.2));
  const auto r = calibrate_clock(DistributionCase::HehW, p, 0.25, 1e-4, 1500, 77);
  CHECK(r.chosen == default_clock(DistributionCase::HehW));
  CHECK(r.ks.size() == kClockCandidates.size());
}
