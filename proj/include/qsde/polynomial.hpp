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
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsde {

/// Exponents of x, y, z.
using Exponent = std::array<int, 3>;

namespace detail {
inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
}  // namespace detail

/// Sparse polynomial in (x, y, z). Terms are kept in lexicographic exponent
/// order, so two polynomials with the same coefficients compare equal.
template <typename Scalar>
class Polynomial {
 public:
  using Terms = std::map<Exponent, Scalar>;

  Polynomial() = default;
  explicit Polynomial(Terms terms) : terms_(std::move(terms)) { drop_zeros(); }

  static Polynomial constant(Scalar c) { return monomial({0, 0, 0}, c); }
  static Polynomial monomial(Exponent e, Scalar c) {
    Polynomial p;
    if (c != Scalar(0)) p.terms_[e] = c;
    return p;
  }
  /// The coordinate function x (0), y (1) or z (2).
  static Polynomial variable(int i) {
    Exponent e{0, 0, 0};
    e[i] = 1;
    return monomial(e, Scalar(1));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
  }

  Scalar coefficient(const Exponent& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  double max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, detail::magnitude(c));
    return m;
  }

  template <typename Point>
  Scalar operator()(const Point& p) const {
    Scalar s(0);
    for (const auto& [e, c] : terms_) {
      double m = 1.0;
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < e[i]; ++k) m *= p[i];
      s += c * m;
    }
    return s;
  }

  Polynomial derivative(int var) const {
    Polynomial d;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponent f = e;
      --f[var];
      d.terms_[f] += c * static_cast<double>(e[var]);
    }
    d.drop_zeros();
    return d;
  }

  /// Drops coefficients with magnitude below tol.
  Polynomial& cleanup(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = detail::magnitude(it->second) < tol ? terms_.erase(it) : std::next(it);
    return *this;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] += c;
    drop_zeros();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) terms_[e] -= c;
    drop_zeros();
    return *this;
  }
  Polynomial& operator*=(Scalar s) {
    for (auto& [e, c] : terms_) c *= s;
    drop_zeros();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
  friend Polynomial operator*(Polynomial a, Scalar s) { return a *= s; }
  friend Polynomial operator*(Scalar s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        p.terms_[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
    p.drop_zeros();
    return p;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void drop_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second == Scalar(0) ? terms_.erase(it) : std::next(it);
  }
  Terms terms_;
};

using RealPolynomial = Polynomial<double>;
using ComplexPolynomial = Polynomial<std::complex<double>>;

inline RealPolynomial real_part(const ComplexPolynomial& p) {
  RealPolynomial::Terms t;
  for (const auto& [e, c] : p.terms()) t[e] = c.real();
  return RealPolynomial(std::move(t));
}

inline ComplexPolynomial complexify(const RealPolynomial& p) {
  ComplexPolynomial::Terms t;
  for (const auto& [e, c] : p.terms()) t[e] = c;
  return ComplexPolynomial(std::move(t));
}

/// Raised when a bracket would exceed the configured polynomial degree.
class DegreeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultDegreeCap = 8;

/// Vector field on R³ with polynomial components.
template <typename Scalar>
class PolyVectorField {
 public:
  using Poly = Polynomial<Scalar>;
  using Jacobian = std::array<std::array<Poly, 3>, 3>;  // [row i][col j] = ∂_j V_i

  PolyVectorField() = default;
  PolyVectorField(Poly x, Poly y, Poly z) : c_{std::move(x), std::move(y), std::move(z)} {}

  const Poly& operator[](int i) const { return c_[i]; }
  Poly& operator[](int i) { return c_[i]; }

  int degree() const {
    return std::max({c_[0].degree(), c_[1].degree(), c_[2].degree()});
  }
  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }

  Jacobian jacobian() const {
    Jacobian j;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) j[i][k] = c_[i].derivative(k);
    return j;
  }

  template <typename Point>
  Eigen::Matrix<Scalar, 3, 1> operator()(const Point& p) const {
    return {c_[0](p), c_[1](p), c_[2](p)};
  }

  /// Jacobian-vector product (J_this · w) as polynomials.
  PolyVectorField directional(const PolyVectorField& w) const {
    PolyVectorField out;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) out.c_[i] += c_[i].derivative(k) * w.c_[k];
    return out;
  }

  PolyVectorField& cleanup(double tol) {
    for (auto& p : c_) p.cleanup(tol);
    return *this;
  }

  double max_abs_coefficient() const {
    return std::max({c_[0].max_abs_coefficient(), c_[1].max_abs_coefficient(),
                     c_[2].max_abs_coefficient()});
  }

  PolyVectorField& operator+=(const PolyVectorField& o) {
    for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
    return *this;
  }
  PolyVectorField& operator-=(const PolyVectorField& o) {
    for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  PolyVectorField& operator*=(Scalar s) {
    for (auto& p : c_) p *= s;
    return *this;
  }
  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
  friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }
  friend PolyVectorField operator*(Scalar s, PolyVectorField a) { return a *= s; }
  friend PolyVectorField operator*(PolyVectorField a, Scalar s) { return a *= s; }
  friend bool operator==(const PolyVectorField&, const PolyVectorField&) = default;

 private:
  std::array<Poly, 3> c_;
};

using VectorField = PolyVectorField<double>;

/// [V, W] = J_V·W − J_W·V, so that brackets of noise fields follow operator
/// commutators: [G_A, G_B] = G_[A,B].
template <typename Scalar>
PolyVectorField<Scalar> lie_bracket(const PolyVectorField<Scalar>& v,
                                    const PolyVectorField<Scalar>& w,
                                    int degree_cap = kDefaultDegreeCap,
                                    const std::string& label = "[V, W]",
                                    double cleanup_tol = 1e-13) {
  const int d = v.degree() + w.degree() - 1;
  if (d > degree_cap)
    throw DegreeCapError("bracket " + label + " would reach degree " + std::to_string(d) +
                         " (cap " + std::to_string(degree_cap) + ")");
  auto out = v.directional(w) - w.directional(v);
  return out.cleanup(cleanup_tol);
}

/// Coefficients of several fields laid out over the union of their
/// (component, monomial) slots: column j holds field j.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> coefficient_matrix(
    const std::vector<PolyVectorField<Scalar>>& fields) {
  std::map<std::pair<int, Exponent>, int> slot;
  for (const auto& f : fields)
    for (int i = 0; i < 3; ++i)
      for (const auto& [e, c] : f[i].terms()) slot.emplace(std::make_pair(i, e), 0);
  int row = 0;
  for (auto& [k, r] : slot) r = row++;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(row, fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j)
    for (int i = 0; i < 3; ++i)
      for (const auto& [e, c] : fields[j][i].terms()) m(slot.at({i, e}), j) = c;
  return m;
}

}  // namespace qsde
