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

#include "qsde/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qsde {

double laguerre(int n, double alpha, double x) {
  if (n < 0) return 0.0;
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> laguerre_all(int n, double alpha, double x) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)) + 1);
  out[0] = 1.0;
  if (n >= 1) out[1] = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k)
    out[k + 1] = ((2.0 * k + 1.0 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1.0);
  return out;
}

double laguerre_derivative(int n, double alpha, double x, int order) {
  if (order > n) return 0.0;
  const double v = laguerre(n - order, alpha + order, x);
  return (order % 2) ? -v : v;
}

double laguerre_norm_weight(int n, double alpha) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(n + 1.0 + alpha));
}

namespace {

// Kronrod 15-point abscissae and weights; every second node is a Gauss 7 node.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWk[7], g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {k * h, std::abs((k - g) * h)};
}

void adapt(const std::function<double(double)>& f, double a, double b, Panel whole,
           double tol, int depth, Quadrature& q) {
  if (whole.error <= tol || depth == 0 || !(b - a > 1e-15 * std::abs(a))) {
    if (whole.error > tol) q.converged = false;
    q.value += whole.value;
    q.error += whole.error;
    return;
  }
  const double m = 0.5 * (a + b);
  const Panel left = gk15(f, a, m), right = gk15(f, m, b);
  q.evaluations += 30;
  adapt(f, a, m, left, 0.5 * tol, depth - 1, q);
  adapt(f, m, b, right, 0.5 * tol, depth - 1, q);
}

}  // namespace

Quadrature integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_depth) {
  Quadrature q;
  if (a == b) return q;
  const Panel whole = gk15(f, a, b);
  q.evaluations = 15;
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole.value));
  adapt(f, a, b, whole, tol, max_depth, q);
  return q;
}

Quadrature integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double width, double min_extent, double tail_tol,
                                 double abs_tol, double rel_tol) {
  if (!(width > 0.0)) throw std::invalid_argument("panel width must be positive");
  Quadrature total;
  double lo = a;
  for (int panel = 0; panel < 200; ++panel) {
    const double hi = lo + width;
    const Quadrature q = integrate(f, lo, hi, abs_tol, rel_tol);
    total.value += q.value;
    total.error += q.error;
    total.evaluations += q.evaluations;
    total.converged = total.converged && q.converged;
    lo = hi;
    if (hi - a >= min_extent && std::abs(q.value) < tail_tol) return total;
    if (panel >= 3) width *= 1.5;
  }
  total.converged = false;
  return total;
}

}  // namespace qsde
