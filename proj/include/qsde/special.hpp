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

#include <functional>
#include <vector>

namespace qsde {

/// Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term recurrence.
double laguerre(int n, double alpha, double x);

/// L_0^(alpha)(x) ... L_n^(alpha)(x).
std::vector<double> laguerre_all(int n, double alpha, double x);

/// d^m/dx^m L_n^(alpha)(x) = (−1)^m L_{n−m}^(alpha+m)(x).
double laguerre_derivative(int n, double alpha, double x, int order = 1);

/// n! / Γ(n + 1 + alpha), evaluated through log-gamma so large n do not overflow.
double laguerre_norm_weight(int n, double alpha);

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/// Adaptive Gauss–Kronrod (7/15) on [a, b].
Quadrature integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-13, double rel_tol = 1e-11,
                     int max_depth = 48);

/// ∫_a^∞ f by consecutive panels of growing width, starting at `width`.
/// Stops once a panel contributes less than `tail_tol` and the integrand has
/// been sampled past `min_extent`.
Quadrature integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double width = 1.0, double min_extent = 0.0,
                                 double tail_tol = 1e-14, double abs_tol = 1e-13,
                                 double rel_tol = 1e-11);

}  // namespace qsde
