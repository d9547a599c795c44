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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsde/sde.hpp"

namespace qsde {

/// The series was cut while its omitted coefficients were still significant.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DistributionCase { HehTheta, HehW, HenPhi, HenLatitude, HonChi };

DistributionCase parse_distribution_case(const std::string& name);
std::string distribution_case_name(DistributionCase c);

/// Default ratio between formula time and simulation time, as frozen in
/// data/clock_calibration.json.
double default_clock(DistributionCase c);

// Wrapped and mixture Gaussians for the σz models. `tau` is formula time.
double pdf_heh_theta(double theta, double tau, double theta0, double eta, int k_max = 20);
double pdf_heh_w(double w, double tau, double w0, double eta);
double cdf_heh_w(double w, double tau, double w0, double eta);
/// Ratio of the two mixture weights, e^{2 w0}.
double heh_w_weight_ratio(double w0);
/// Probability of w < 0 (southern hemisphere).
double heh_w_southern_mass(double tau, double w0, double eta);

/// Σ_n c_n L_n^(alpha)(x) with c_n = a_n e^{−(n+1)τ}, n = 0..n_max.
class LaguerreSeries {
 public:
  /// `a(n)` is queried for n = 0..n_max+5; the last five only feed the tail check.
  LaguerreSeries(double alpha, const std::function<double(int)>& a, double tau, int n_max);

  double alpha() const { return alpha_; }
  double time() const { return tau_; }
  int n_max() const { return n_max_; }
  const std::vector<double>& coefficients() const { return c_; }
  /// max |c_n| over the five omitted indices, relative to the largest kept one.
  double tail_ratio() const { return tail_ratio_; }
  double operator()(double x) const;

 private:
  double alpha_, tau_;
  int n_max_;
  std::vector<double> c_;
  double tail_ratio_ = 0.0;
};

/// Relative tail level above which a series is reported as truncated.
inline constexpr double kSeriesTailTolerance = 1e-12;

/// Angular Fourier mode A_k of the heterodyne-fluorescence density in φ.
/// A_0 is the marginal density of φ; the normalization is shared by all k.
class HenPhiSeries {
 public:
  HenPhiSeries(double tau, double phi0, double c0, double eta, int k = 0, int n_max = 60);
  double operator()(double phi) const;
  double normalization() const { return norm_; }
  const LaguerreSeries& series() const { return series_; }

 private:
  double unnormalized(double phi) const;
  double tau_, phi0_, c0_, eta_;
  int k_;
  LaguerreSeries series_;
  double norm_ = 1.0;
};

double pdf_hen_phi(double phi, double tau, double phi0, double c0, double eta, int k = 0,
                   int n_max = 60);
/// Closed form of the marginal for a start at the excited pole (φ0 = 0, c0 = 1/2).
double pdf_hen_phi_origin(double phi, double tau, double eta);
/// Density in latitude λ = asin z, η = 1, start at the excited pole.
double pdf_hen_latitude(double lambda, double tau);

enum class ChiBranch {
  Singular,  ///< density ∝ χ^{−1/2} Σ b_n L_n^(−1/2): matches simulation
  Regular,   ///< literal L_n^(1/2) series without the χ^{−1/2} factor
};

/// Density of χ for the homodyne-fluorescence model.
class HonChiSeries {
 public:
  HonChiSeries(double tau, double chi0, double c0, double eta, int n_max = 60,
               ChiBranch branch = ChiBranch::Singular);
  double operator()(double chi) const;
  /// Density of s = √χ, finite at s = 0 for either branch.
  double density_sqrt(double s) const;
  double normalization() const { return norm_; }
  const LaguerreSeries& series() const { return series_; }
  ChiBranch branch() const { return branch_; }

 private:
  double prefactor(double chi) const;
  double tau_, c0_, eta_;
  ChiBranch branch_;
  LaguerreSeries series_;
  double norm_ = 1.0;
};

double pdf_hon_chi(double chi, double tau, double chi0, double c0, double eta,
                   int n_max = 60, ChiBranch branch = ChiBranch::Singular);

struct DistributionParams {
  double eta = 1.0;
  double theta0 = 0.0;
  double w0 = 0.0;
  double phi0 = 0.0;
  double c0 = 0.5;
  double chi0 = 0.0;
  int k_max = 20;
  int n_max = 60;
  int grid_cells = 2048;
};

/// One closed-form density at a fixed formula time, with a tabulated CDF.
class ClosedFormDistribution {
 public:
  ClosedFormDistribution(DistributionCase c, DistributionParams p, double tau);
  static ClosedFormDistribution at_sim_time(DistributionCase c, DistributionParams p,
                                            double t_sim, double clock);

  DistributionCase distribution_case() const { return case_; }
  const DistributionParams& params() const { return params_; }
  double tau() const { return tau_; }
  double pdf(double u) const;
  double cdf(double u) const;
  double quantile(double p) const;
  double lower() const { return from_internal(grid_.front()); }
  double upper() const { return from_internal(grid_.back()); }
  /// Integral of the density over the tabulated support before renormalization.
  double tabulated_mass() const { return mass_; }
  /// Largest omitted-coefficient ratio (0 for closed forms).
  double tail_ratio() const { return tail_; }

 private:
  double pdf_internal(double s) const;  // density in the tabulation variable
  double to_internal(double u) const;
  double from_internal(double s) const;

  DistributionCase case_;
  DistributionParams params_;
  double tau_;
  std::optional<HenPhiSeries> phi_;
  std::optional<HonChiSeries> chi_;
  std::vector<double> grid_, cum_;
  double mass_ = 1.0, tail_ = 0.0;
};

/// Which coordinate a sample is mapped through before comparison.
enum class CoordinateMap { W, Theta, Phi, Latitude, Chi };

CoordinateMap coordinate_for(DistributionCase c);
/// Pole hits map to ±infinity so they land in the outermost CDF tail.
double map_coordinate(CoordinateMap map, const Eigen::Vector3d& v, double eta,
                      double theta0 = 0.0);

/// Models whose trajectories the case describes.
std::vector<Preset> presets_for(DistributionCase c);

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
/// Asymptotic Kolmogorov tail probability with Stephens' small-n correction.
double kolmogorov_p(double d, std::size_t n);

struct KsResult {
  double statistic = 0.0;
  double p_hint = 0.0;
  std::size_t n = 0;
};

/// One-sample KS test between the ensemble's final states and `dist`.
KsResult compare_mc(const ClosedFormDistribution& dist, const Ensemble& ensemble,
                    CoordinateMap map);
KsResult compare_mc(const ClosedFormDistribution& dist, const Ensemble& ensemble);

/// Initial Bloch vector realizing the parameters of a case (used by the
/// calibration and by tests).
Eigen::Vector3d start_state(DistributionCase c, const DistributionParams& p);

struct CalibrationResult {
  DistributionCase dist_case;
  Preset preset;
  double horizon = 0.0;
  double dt = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> candidates;
  std::vector<double> ks;
  double chosen = 0.0;
};

inline constexpr std::array<double, 5> kClockCandidates = {0.25, 0.5, 1.0, 2.0, 4.0};

/// Simulates the matching preset and picks the clock factor with smallest KS.
CalibrationResult calibrate_clock(DistributionCase c, const DistributionParams& p,
                                  double horizon, double dt, std::size_t n,
                                  std::uint64_t seed);

}  // namespace qsde
