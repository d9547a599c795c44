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

#include "qsde/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qsde/invariants.hpp"
#include "qsde/special.hpp"

namespace qsde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_time(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw InvalidState("evaluation time must be positive");
}

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InvalidState("efficiency must lie in (0, 1]");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Walks outwards in steps of scale/16 until the density has fallen below
// 1e-16 of its running peak, or starts growing again far out in the tail
// (a truncated series eventually diverges).
// End of the numerically meaningful support of a unimodal, positive density.
// Truncated Laguerre sums eventually grow like a polynomial, so the scan also
// stops once the decayed tail turns upward or changes sign.
double support_extent(const std::function<double(double)>& f, double scale) {
  const double h = scale / 16.0;
  double peak = 0.0, prev = 0.0, u = 0.0;
  for (int j = 0; j < 16 * 200; ++j) {
    u = h * j;
    const double v = f(u);
    peak = std::max(peak, v);
    if (j > 16) {
      if (std::abs(v) < 1e-16 * peak) return u;
      if (prev < 1e-3 * peak && (v <= 0.0 || v > prev)) return u - h;
    }
    prev = v;
  }
  return u;
}

double integrate_span(const std::function<double(double)>& f, double lo, double hi,
                      int panels) {
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i)
    total += integrate(f, lo + i * h, lo + (i + 1) * h, 1e-16, 1e-11, 12).value;
  return total;
}

void check_tail(const LaguerreSeries& s, const char* what) {
  if (s.tail_ratio() > kSeriesTailTolerance) {
    std::ostringstream os;
    os << what << " series not converged at n_max = " << s.n_max()
       << " (tail ratio " << s.tail_ratio() << " at time " << s.time()
       << "); raise n_max or evaluate at a later time";
    throw TruncationError(os.str());
  }
}

}  // namespace

DistributionCase parse_distribution_case(const std::string& name) {
  if (name == "heh-theta") return DistributionCase::HehTheta;
  if (name == "heh-w") return DistributionCase::HehW;
  if (name == "hen-phi") return DistributionCase::HenPhi;
  if (name == "hen-latitude") return DistributionCase::HenLatitude;
  if (name == "hon-chi") return DistributionCase::HonChi;
  throw InvalidState("unknown distribution case '" + name + "'");
}

std::string distribution_case_name(DistributionCase c) {
  switch (c) {
    case DistributionCase::HehTheta: return "heh-theta";
    case DistributionCase::HehW: return "heh-w";
    case DistributionCase::HenPhi: return "hen-phi";
    case DistributionCase::HenLatitude: return "hen-latitude";
    case DistributionCase::HonChi: return "hon-chi";
  }
  return {};
}

double default_clock(DistributionCase c) {
  switch (c) {
    case DistributionCase::HehTheta:
    case DistributionCase::HehW: return 4.0;
    case DistributionCase::HenPhi:
    case DistributionCase::HenLatitude: return 2.0;
    case DistributionCase::HonChi: return 1.0;
  }
  return 1.0;
}

// ---------------------------------------------------------------- σz models

double pdf_heh_theta(double theta, double tau, double theta0, double eta, int k_max) {
  require_time(tau);
  require_eta(eta);
  if (k_max < 1) throw InvalidState("k_max must be at least 1");
  const double var = eta * tau;
  const double d = theta - theta0;
  if (var > 1.0) {
    // Fourier form of the same heat kernel; converges faster for wide spreads.
    double s = 1.0;
    for (int m = 1; m <= k_max; ++m) s += 2.0 * std::exp(-0.5 * m * m * var) * std::cos(m * d);
    return s / (2.0 * kPi);
  }
  double s = 0.0;
  for (int k = -k_max; k <= k_max; ++k) {
    const double u = d + 2.0 * kPi * k;
    s += std::exp(-u * u / (2.0 * var));
  }
  return s / std::sqrt(2.0 * kPi * var);
}

double pdf_heh_w(double w, double tau, double w0, double eta) {
  require_time(tau);
  require_eta(eta);
  const double var = eta * tau;
  const double a = w - w0 - var, b = w - w0 + var;
  // e^{±w0} / (2 cosh w0) written as logistic weights to avoid overflow.
  const double up = 1.0 / (1.0 + std::exp(-2.0 * w0));
  const double down = 1.0 - up;
  return (up * std::exp(-a * a / (2.0 * var)) + down * std::exp(-b * b / (2.0 * var))) /
         std::sqrt(2.0 * kPi * var);
}

double cdf_heh_w(double w, double tau, double w0, double eta) {
  require_time(tau);
  require_eta(eta);
  const double var = eta * tau, sd = std::sqrt(var);
  const double up = 1.0 / (1.0 + std::exp(-2.0 * w0));
  return up * normal_cdf((w - w0 - var) / sd) + (1.0 - up) * normal_cdf((w - w0 + var) / sd);
}

double heh_w_weight_ratio(double w0) { return std::exp(2.0 * w0); }

double heh_w_southern_mass(double tau, double w0, double eta) {
  return cdf_heh_w(0.0, tau, w0, eta);
}

// ---------------------------------------------------------- Laguerre series

LaguerreSeries::LaguerreSeries(double alpha, const std::function<double(int)>& a,
                               double tau, int n_max)
    : alpha_(alpha), tau_(tau), n_max_(n_max) {
  if (n_max < 1) throw InvalidState("n_max must be at least 1");
  if (!(alpha > -1.0)) throw InvalidState("Laguerre order must exceed -1");
  require_time(tau);
  c_.resize(static_cast<std::size_t>(n_max) + 1);
  double head = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    c_[n] = a(n) * std::exp(-(n + 1.0) * tau);
    if (!std::isfinite(c_[n])) throw TruncationError("non-finite series coefficient");
    head = std::max(head, std::abs(c_[n]));
  }
  double tail = 0.0;
  for (int n = n_max + 1; n <= n_max + 5; ++n)
    tail = std::max(tail, std::abs(a(n) * std::exp(-(n + 1.0) * tau)));
  tail_ratio_ = head > 0.0 ? tail / head : 0.0;
}

double LaguerreSeries::operator()(double x) const {
  const auto L = laguerre_all(n_max_, alpha_, x);
  double s = 0.0;
  for (int n = n_max_; n >= 0; --n) s += c_[n] * L[n];
  return s;
}

// ------------------------------------------------------ heterodyne σ− model

namespace {

LaguerreSeries phi_series(double tau, double phi0, int k, int n_max) {
  const double lift = k == 0 ? 1.0 : std::pow(phi0, 0.5 * k);
  return LaguerreSeries(
      k, [&](int n) { return laguerre(n, k, phi0) * lift * laguerre_norm_weight(n, k); },
      tau, n_max);
}

}  // namespace

HenPhiSeries::HenPhiSeries(double tau, double phi0, double c0, double eta, int k,
                           int n_max)
    : tau_(tau), phi0_(phi0), c0_(c0), eta_(eta), k_(k),
      series_(phi_series(tau, phi0, k, n_max)) {
  require_time(tau);
  require_eta(eta);
  if (!(phi0 >= 0.0)) throw InvalidState("phi0 must be non-negative");
  if (!(c0 >= 0.5 - kTolerances.algebraic)) throw InvalidState("c0 must be at least 1/2");
  if (k < 0) throw InvalidState("mode index must be non-negative");
  check_tail(series_, "phi");

  const LaguerreSeries marginal = k == 0 ? series_ : phi_series(tau, phi0, 0, n_max);
  check_tail(marginal, "phi");
  auto density0 = [&](double phi) {
    return (2.0 * c0_ - eta_ + eta_ * (phi + 1.0) * std::exp(-tau_)) * marginal(phi);
  };
  const double d = 1.0 / std::expm1(tau);
  const double scale = (1.0 + phi0) * (1.0 + 1.0 / d);
  const double hi = support_extent(density0, scale);
  norm_ = integrate_span(density0, 0.0, hi, 64);
  if (!(norm_ > 0.0)) throw TruncationError("phi series normalization is not positive");
}

double HenPhiSeries::unnormalized(double phi) const {
  const double pre = 2.0 * c0_ - eta_ + eta_ * (phi + 1.0) * std::exp(-tau_);
  const double lift = k_ == 0 ? 1.0 : std::pow(phi * std::exp(-tau_), 0.5 * k_);
  return lift * pre * series_(phi);
}

double HenPhiSeries::operator()(double phi) const {
  if (phi < 0.0) return 0.0;
  return unnormalized(phi) / norm_;
}

double pdf_hen_phi(double phi, double tau, double phi0, double c0, double eta, int k,
                   int n_max) {
  return HenPhiSeries(tau, phi0, c0, eta, k, n_max)(phi);
}

double pdf_hen_phi_origin(double phi, double tau, double eta) {
  require_time(tau);
  require_eta(eta);
  if (phi < 0.0) return 0.0;
  const double d = 1.0 / std::expm1(tau);
  return (1.0 - eta + eta * (phi + 1.0) * std::exp(-tau)) * d * std::exp(-d * phi);
}

double pdf_hen_latitude(double lambda, double tau) {
  require_time(tau);
  if (!(std::abs(lambda) < kPi / 2)) return 0.0;
  const double s = std::sin(lambda);
  const double d = 1.0 / std::expm1(tau);
  const double phi = (1.0 - s) / (1.0 + s);
  return 4.0 * std::cos(lambda) / std::pow(1.0 + s, 3) * std::exp(-tau) * d *
         std::exp(-d * phi);
}

// ------------------------------------------------------- homodyne σ− model

namespace {

LaguerreSeries chi_series(double tau, double chi0, ChiBranch branch, int n_max) {
  const double alpha = branch == ChiBranch::Singular ? -0.5 : 0.5;
  return LaguerreSeries(
      alpha,
      [&](int n) { return laguerre(n, alpha, chi0) * laguerre_norm_weight(n, alpha); },
      tau, n_max);
}

}  // namespace

HonChiSeries::HonChiSeries(double tau, double chi0, double c0, double eta, int n_max,
                           ChiBranch branch)
    : tau_(tau), c0_(c0), eta_(eta), branch_(branch),
      series_(chi_series(tau, chi0, branch, n_max)) {
  require_time(tau);
  require_eta(eta);
  if (!(chi0 >= 0.0)) throw InvalidState("chi0 must be non-negative");
  if (!(c0 >= eta / 2.0 - kTolerances.algebraic))
    throw InvalidState("c0 must be at least eta/2");
  check_tail(series_, "chi");
  norm_ = 1.0;
  auto g = [&](double s) { return density_sqrt(s); };
  const double d = 1.0 / std::expm1(tau);
  const double scale = std::sqrt((1.0 + chi0) * (1.0 + 1.0 / d));
  const double hi = support_extent(g, scale);
  norm_ = integrate_span(g, 0.0, hi, 64);
  if (!(norm_ > 0.0)) throw TruncationError("chi series normalization is not positive");
}

double HonChiSeries::prefactor(double chi) const {
  return c0_ - eta_ / 2.0 + eta_ * (chi + 0.5) * std::exp(-tau_);
}

double HonChiSeries::density_sqrt(double s) const {
  if (s < 0.0) return 0.0;
  const double chi = s * s;
  // ds-density: 2s·P(s²); the singular branch's χ^{-1/2} cancels the 2s.
  const double jac = branch_ == ChiBranch::Singular ? 2.0 : 2.0 * s;
  return jac * prefactor(chi) * series_(chi) / norm_;
}

double HonChiSeries::operator()(double chi) const {
  if (chi < 0.0) return 0.0;
  const double body = prefactor(chi) * series_(chi) / norm_;
  if (branch_ == ChiBranch::Singular)
    return chi > 0.0 ? body / std::sqrt(chi) : kInf;
  return body;
}

double pdf_hon_chi(double chi, double tau, double chi0, double c0, double eta, int n_max,
                   ChiBranch branch) {
  return HonChiSeries(tau, chi0, c0, eta, n_max, branch)(chi);
}

// ----------------------------------------------------- tabulated distribution

ClosedFormDistribution::ClosedFormDistribution(DistributionCase c, DistributionParams p,
                                               double tau)
    : case_(c), params_(p), tau_(tau) {
  require_time(tau);
  if (p.grid_cells < 16) throw InvalidState("grid_cells must be at least 16");
  double lo = 0.0, hi = 1.0;
  switch (c) {
    case DistributionCase::HehTheta:
      lo = p.theta0 - kPi;
      hi = p.theta0 + kPi;
      break;
    case DistributionCase::HehW: {
      const double var = p.eta * tau, spread = var + 12.0 * std::sqrt(var);
      lo = p.w0 - spread;
      hi = p.w0 + spread;
      break;
    }
    case DistributionCase::HenPhi: {
      phi_.emplace(tau, p.phi0, p.c0, p.eta, 0, p.n_max);
      tail_ = phi_->series().tail_ratio();
      const double d = 1.0 / std::expm1(tau);
      hi = support_extent([&](double u) { return (*phi_)(u); },
                          (1.0 + p.phi0) * (1.0 + 1.0 / d));
      break;
    }
    case DistributionCase::HenLatitude:
      lo = -kPi / 2;
      hi = kPi / 2;
      break;
    case DistributionCase::HonChi: {
      chi_.emplace(tau, p.chi0, p.c0, p.eta, p.n_max);
      tail_ = chi_->series().tail_ratio();
      const double d = 1.0 / std::expm1(tau);
      hi = support_extent([&](double s) { return chi_->density_sqrt(s); },
                          std::sqrt((1.0 + p.chi0) * (1.0 + 1.0 / d)));
      break;
    }
  }
  const int m = p.grid_cells;
  grid_.resize(m + 1);
  cum_.assign(m + 1, 0.0);
  const double h = (hi - lo) / m;
  auto f = [this](double s) { return pdf_internal(s); };
  for (int i = 0; i <= m; ++i) grid_[i] = lo + h * i;
  for (int i = 0; i < m; ++i)
    cum_[i + 1] = cum_[i] + integrate(f, grid_[i], grid_[i + 1], 1e-16, 1e-10, 10).value;
  mass_ = cum_.back();
  if (!(mass_ > 0.0)) throw TruncationError("density has no mass on its support");
  for (double& v : cum_) v /= mass_;
}

ClosedFormDistribution ClosedFormDistribution::at_sim_time(DistributionCase c,
                                                           DistributionParams p,
                                                           double t_sim, double clock) {
  if (!(clock > 0.0)) throw InvalidState("clock factor must be positive");
  return ClosedFormDistribution(c, p, clock * t_sim);
}

double ClosedFormDistribution::pdf_internal(double s) const {
  switch (case_) {
    case DistributionCase::HehTheta:
      return pdf_heh_theta(s, tau_, params_.theta0, params_.eta, params_.k_max);
    case DistributionCase::HehW: return pdf_heh_w(s, tau_, params_.w0, params_.eta);
    case DistributionCase::HenPhi: return (*phi_)(s);
    case DistributionCase::HenLatitude: return pdf_hen_latitude(s, tau_);
    case DistributionCase::HonChi: return chi_->density_sqrt(s);
  }
  return 0.0;
}

double ClosedFormDistribution::to_internal(double u) const {
  if (case_ == DistributionCase::HonChi) return u > 0.0 ? std::sqrt(u) : 0.0;
  return u;
}

double ClosedFormDistribution::from_internal(double s) const {
  return case_ == DistributionCase::HonChi ? s * s : s;
}

double ClosedFormDistribution::pdf(double u) const {
  if (case_ == DistributionCase::HonChi) return (*chi_)(u);
  return pdf_internal(u);
}

double ClosedFormDistribution::cdf(double u) const {
  if (case_ == DistributionCase::HehW) return cdf_heh_w(u, tau_, params_.w0, params_.eta);
  if (case_ == DistributionCase::HonChi && u < 0.0) return 0.0;
  const double s = to_internal(u);
  if (s <= grid_.front()) return 0.0;
  if (s >= grid_.back()) return 1.0;
  const double h = grid_[1] - grid_[0];
  const auto i = std::min<std::size_t>(static_cast<std::size_t>((s - grid_[0]) / h),
                                       grid_.size() - 2);
  const double frac = (s - grid_[i]) / h;
  return cum_[i] + frac * (cum_[i + 1] - cum_[i]);
}

double ClosedFormDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidState("probability must lie in [0, 1]");
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), p);
  if (it == cum_.begin()) return from_internal(grid_.front());
  if (it == cum_.end()) return from_internal(grid_.back());
  const auto i = static_cast<std::size_t>(it - cum_.begin());
  const double span = cum_[i] - cum_[i - 1];
  const double frac = span > 0.0 ? (p - cum_[i - 1]) / span : 0.0;
  return from_internal(grid_[i - 1] + frac * (grid_[i] - grid_[i - 1]));
}

// ------------------------------------------------------------ comparison

CoordinateMap coordinate_for(DistributionCase c) {
  switch (c) {
    case DistributionCase::HehTheta: return CoordinateMap::Theta;
    case DistributionCase::HehW: return CoordinateMap::W;
    case DistributionCase::HenPhi: return CoordinateMap::Phi;
    case DistributionCase::HenLatitude: return CoordinateMap::Latitude;
    case DistributionCase::HonChi: return CoordinateMap::Chi;
  }
  return CoordinateMap::W;
}

double map_coordinate(CoordinateMap map, const Eigen::Vector3d& v, double eta,
                      double theta0) {
  switch (map) {
    case CoordinateMap::W:
      if (v.z() >= 1.0) return kInf;
      if (v.z() <= -1.0) return -kInf;
      return std::atanh(v.z());
    case CoordinateMap::Theta: {
      double d = std::atan2(v.y(), v.x()) - theta0;
      d -= 2.0 * kPi * std::floor((d + kPi) / (2.0 * kPi));
      return theta0 + d;
    }
    case CoordinateMap::Latitude: return std::atan2(v.z(), std::hypot(v.x(), v.y()));
    case CoordinateMap::Phi:
    case CoordinateMap::Chi:
      try {
        return eval_invariant({map == CoordinateMap::Phi ? InvariantTag::Phi
                                                         : InvariantTag::Chi},
                              v, eta, 1e-300);
      } catch (const PoleError&) {
        return kInf;
      }
  }
  return 0.0;
}

std::vector<Preset> presets_for(DistributionCase c) {
  switch (c) {
    case DistributionCase::HehTheta: return {Preset::HeH};
    case DistributionCase::HehW: return {Preset::HeH, Preset::HoH};
    case DistributionCase::HenPhi:
    case DistributionCase::HenLatitude: return {Preset::HeN};
    case DistributionCase::HonChi: return {Preset::HoN};
  }
  return {};
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidState("no samples to compare");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double kolmogorov_p(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult compare_mc(const ClosedFormDistribution& dist, const Ensemble& ensemble,
                    CoordinateMap map) {
  if (ensemble.trajectories.empty()) throw InvalidState("ensemble is empty");
  const auto& p = dist.params();
  bool matched = false;
  for (Preset pr : presets_for(dist.distribution_case()))
    matched = matched || approx_equal(ensemble.model, preset(pr, p.eta));
  if (!matched)
    throw InvalidState("ensemble model does not match the presets described by '" +
                       distribution_case_name(dist.distribution_case()) + "'");
  if (map != coordinate_for(dist.distribution_case()))
    throw InvalidState("coordinate map does not match the distribution case");

  std::vector<double> u;
  u.reserve(ensemble.trajectories.size());
  for (const auto& t : ensemble.trajectories)
    u.push_back(map_coordinate(map, t.final_state(), p.eta, p.theta0));
  const double d = ks_statistic(std::move(u), [&](double s) { return dist.cdf(s); });
  return {d, kolmogorov_p(d, ensemble.trajectories.size()), ensemble.trajectories.size()};
}

KsResult compare_mc(const ClosedFormDistribution& dist, const Ensemble& ensemble) {
  return compare_mc(dist, ensemble, coordinate_for(dist.distribution_case()));
}

Eigen::Vector3d start_state(DistributionCase c, const DistributionParams& p) {
  Eigen::Vector3d v;
  switch (c) {
    case DistributionCase::HehTheta:
    case DistributionCase::HehW: {
      const double z = std::tanh(p.w0), r = std::sqrt(std::max(0.0, 1.0 - z * z));
      v << r * std::cos(p.theta0), r * std::sin(p.theta0), z;
      break;
    }
    case DistributionCase::HenPhi: {
      const double up = 1.0 / (p.c0 + p.eta * p.phi0 / 2.0);
      const double r = std::sqrt(p.eta * p.phi0) * up;
      v << r * std::cos(p.theta0), r * std::sin(p.theta0), up - 1.0;
      break;
    }
    case DistributionCase::HenLatitude: v << 0.0, 0.0, 1.0; break;
    case DistributionCase::HonChi: {
      const double up = 1.0 / (p.c0 + p.eta * p.chi0);
      v << std::sqrt(2.0 * p.eta * p.chi0) * up, 0.0, up - 1.0;
      break;
    }
  }
  if (v.norm() > 1.0 + kTolerances.algebraic)
    throw InvalidState("parameters describe a point outside the Bloch ball");
  return v;
}

CalibrationResult calibrate_clock(DistributionCase c, const DistributionParams& p,
                                  double horizon, double dt, std::size_t n,
                                  std::uint64_t seed) {
  CalibrationResult res{c, presets_for(c).back(), horizon, dt, n, seed, {}, {}, 0.0};
  const double eta = c == DistributionCase::HenLatitude ? 1.0 : p.eta;
  const ModelSpec model = preset(res.preset, eta);
  const auto rho0 = density_from_bloch(BlochVector(start_state(c, p)));
  SimulationOptions opt;
  opt.stride = static_cast<std::size_t>(std::llround(horizon / dt));
  const Ensemble ens = simulate_ensemble(model, rho0, dt, horizon, n, seed, opt);

  double best = kInf;
  for (double kappa : kClockCandidates) {
    DistributionParams q = p;
    q.eta = eta;
    const double tau = kappa * horizon;
    // Short formula times need longer series; the frozen defaults do not.
    q.n_max = std::min(4000, std::max(p.n_max, static_cast<int>(std::ceil(32.0 / tau)) + 10));
    const ClosedFormDistribution dist(c, q, tau);
    const double d = compare_mc(dist, ens).statistic;
    res.candidates.push_back(kappa);
    res.ks.push_back(d);
    if (d < best) {
      best = d;
      res.chosen = kappa;
    }
  }
  return res;
}

}  // namespace qsde
