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

#include "qsde/accessibility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "qsde/rng.hpp"
#include "qsde/sde.hpp"

namespace qsde {

std::string canonical_form_name(CanonicalForm f) {
  switch (f) {
    case CanonicalForm::SigmaMinusLike: return "sigma_minus_like";
    case CanonicalForm::SigmaZLike: return "sigma_z_like";
    case CanonicalForm::None: return "none";
  }
  return {};
}

std::string dependence_option_name(DependenceOption o) {
  switch (o) {
    case DependenceOption::Linear: return "linear";
    case DependenceOption::AllSkew: return "all_skew";
    case DependenceOption::RotatedProjection: return "rotated_projection";
    case DependenceOption::Independent: return "independent";
  }
  return {};
}

std::string confidence_name(Confidence c) {
  return c == Confidence::ExactRank ? "exact_rank" : "mc_corroborated";
}

// ------------------------------------------------------------ curve criterion

namespace {

using Vec3 = std::array<double, 3>;

// Plain Nelder–Mead on R³; returns the best vertex found.
Vec3 nelder_mead(const std::function<double(const Vec3&)>& f, Vec3 start, double step,
                 int max_iter = 2000) {
  std::array<Vec3, 4> v{start, start, start, start};
  for (int i = 0; i < 3; ++i) v[i + 1][i] += step;
  std::array<double, 4> fv;
  for (int i = 0; i < 4; ++i) fv[i] = f(v[i]);
  auto lerp = [](const Vec3& a, const Vec3& b, double t) {
    return Vec3{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])};
  };
  for (int it = 0; it < max_iter; ++it) {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::array<Vec3, 4> sv;
    std::array<double, 4> sf;
    for (int i = 0; i < 4; ++i) {
      sv[i] = v[idx[i]];
      sf[i] = fv[idx[i]];
    }
    v = sv;
    fv = sf;
    if (fv[3] - fv[0] <= 1e-30 + 1e-15 * std::abs(fv[0])) break;
    Vec3 c{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) c[k] += v[i][k] / 3.0;
    const Vec3 xr = lerp(c, v[3], -1.0);
    const double fr = f(xr);
    if (fr < fv[0]) {
      const Vec3 xe = lerp(c, v[3], -2.0);
      const double fe = f(xe);
      if (fe < fr) { v[3] = xe; fv[3] = fe; } else { v[3] = xr; fv[3] = fr; }
    } else if (fr < fv[2]) {
      v[3] = xr;
      fv[3] = fr;
    } else {
      const Vec3 xc = fr < fv[3] ? lerp(c, v[3], -0.5) : lerp(c, v[3], 0.5);
      const double fc = f(xc);
      if (fc < std::min(fr, fv[3])) {
        v[3] = xc;
        fv[3] = fc;
      } else {
        for (int i = 1; i < 4; ++i) {
          v[i] = lerp(v[0], v[i], 0.5);
          fv[i] = f(v[i]);
        }
      }
    }
  }
  return v[std::min_element(fv.begin(), fv.end()) - fv.begin()];
}

double form_defect(const Matrix2c& m, CanonicalForm target) {
  if (target == CanonicalForm::SigmaMinusLike)
    return std::norm(m(0, 0)) + std::norm(m(0, 1)) + std::norm(m(1, 1));
  return std::norm(m(0, 1)) + std::norm(m(1, 0));
}

}  // namespace

Matrix2c euler_unitary(double a, double b, double c) {
  const Complex i(0, 1);
  auto rz = [&](double t) {
    Matrix2c m;
    m << std::exp(-0.5 * i * t), 0, 0, std::exp(0.5 * i * t);
    return m;
  };
  Matrix2c ry;
  ry << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
  return rz(a) * ry * rz(c);
}

NormalizerResult basis_normalizer(const Matrix2c& L, CanonicalForm target, int restarts,
                                  double tol) {
  NormalizerResult best;
  if (target == CanonicalForm::None) return best;
  const double scale = L.squaredNorm();
  if (!(scale > 0.0)) throw InvalidState("operator must be nonzero");
  auto objective = [&](const Vec3& p) {
    const Matrix2c u = euler_unitary(p[0], p[1], p[2]);
    return form_defect(u * L * u.adjoint(), target) / scale;
  };
  best.residual = std::numeric_limits<double>::infinity();
  const CounterRng rng(0x5EEDu);
  for (int r = 0; r < restarts; ++r) {
    const auto u1 = rng.uniforms(r, 0), u2 = rng.uniforms(r, 1);
    const Vec3 start{2 * std::numbers::pi * u1[0], std::numbers::pi * u1[1],
                     2 * std::numbers::pi * u2[0]};
    const Vec3 p = nelder_mead(objective, start, 0.5);
    const double val = objective(p);
    if (val < best.residual) {
      best.residual = val;
      best.unitary = euler_unitary(p[0], p[1], p[2]);
    }
    if (best.residual <= tol) break;
  }
  best.matched = best.residual <= tol;
  return best;
}

CurveVerdict curve_criterion(const Matrix2c& L, CommutatorOrder order) {
  const double nl = L.norm();
  if (!(nl > 0.0)) throw InvalidState("operator must be nonzero");
  const Matrix2c Ld = L.adjoint();
  const Matrix2c K = (order == CommutatorOrder::LLdag ? commutator(L, Ld) : commutator(Ld, L)) * L;

  // Real least squares for (r, Re c, Im c) over the 8 real entries.
  Eigen::Matrix<double, 8, 3> A;
  Eigen::Matrix<double, 8, 1> rhs;
  const Complex i(0, 1);
  for (int k = 0; k < 4; ++k) {
    const int row = k / 2, col = k % 2;
    const Complex id = row == col ? Complex(1) : Complex(0);
    const std::array<Complex, 3> basis{L(row, col), id, i * id};
    for (int j = 0; j < 3; ++j) {
      A(2 * k, j) = basis[j].real();
      A(2 * k + 1, j) = basis[j].imag();
    }
    rhs(2 * k) = K(row, col).real();
    rhs(2 * k + 1) = K(row, col).imag();
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
  CurveVerdict v;
  v.r = sol(0);
  v.c = Complex(sol(1), sol(2));
  v.residual = (A * sol - rhs).norm() / std::max(K.norm(), nl * nl * nl);
  v.curve = v.residual < kTolerances.curve_residual;
  if (!v.curve) return v;

  const Matrix2c traceless = L - (L.trace() / 2.0) * Matrix2c::Identity();
  const double na = traceless.norm();
  const double tiny = kTolerances.curve_residual;
  if (na <= tiny * nl) {
    v.canonical_form = CanonicalForm::SigmaZLike;
  } else if (std::abs(traceless.determinant()) <= tiny * na * na &&
             std::abs(L.trace()) <= tiny * nl) {
    v.canonical_form = CanonicalForm::SigmaMinusLike;
  } else if ((traceless * traceless.adjoint() - traceless.adjoint() * traceless).norm() <=
             tiny * na * na) {
    v.canonical_form = CanonicalForm::SigmaZLike;
  }
  if (v.canonical_form != CanonicalForm::None)
    v.normalizer_agrees = basis_normalizer(L, v.canonical_form).matched;
  return v;
}

// ------------------------------------------------------------ dependence

std::vector<Eigen::Vector3d> sample_interior(int count, std::uint64_t seed, double radius) {
  std::vector<Eigen::Vector3d> pts;
  const CounterRng rng(seed);
  for (std::uint64_t attempt = 0; static_cast<int>(pts.size()) < count; ++attempt) {
    const auto a = rng.uniforms(attempt, 0), b = rng.uniforms(attempt, 1);
    const Eigen::Vector3d p = radius * Eigen::Vector3d(2 * a[0] - 1, 2 * a[1] - 1, 2 * b[0] - 1);
    if (p.norm() <= radius && 1.0 - std::abs(p.z()) > 1e-3) pts.push_back(p);
  }
  return pts;
}

int pointwise_rank(const std::vector<VectorField>& fields, const Eigen::Vector3d& p,
                   double threshold) {
  Eigen::MatrixXd m(3, fields.size());
  int cols = 0;
  for (const auto& f : fields) {
    const Eigen::Vector3d v = f(p);
    const double n = v.norm();
    if (n > 1e-14) m.col(cols++) = v / n;
  }
  if (cols == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.leftCols(cols));
  const auto& s = svd.singularValues();
  int r = 0;
  for (int k = 0; k < s.size(); ++k) r += s(k) > threshold * s(0);
  return r;
}

DependenceVerdict g_dependence(const std::vector<Matrix2c>& operators, std::uint64_t seed) {
  const std::size_t n = operators.size();
  if (n < 2 || n > 3) throw InvalidState("dependence test takes 2 or 3 operators");
  DependenceVerdict v;
  std::vector<OperatorDecomposition> d;
  Eigen::MatrixXd stacked(6, n);
  for (std::size_t k = 0; k < n; ++k) {
    d.push_back(decompose(operators[k]));
    stacked.col(k) << d[k].real_part, d[k].imag_part;
  }
  const double tol = kTolerances.independence;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (int k = 0; k < s.size(); ++k) rank += s(k) > tol * std::max(s(0), 1.0);

  if (rank < static_cast<int>(n)) {
    v.dependent = true;
    v.option = DependenceOption::Linear;
  } else if (n == 3) {
    Eigen::Matrix3d a;
    for (int k = 0; k < 3; ++k) a.col(k) = d[k].real_part;
    const double amax = a.cwiseAbs().maxCoeff();
    if (amax <= tol) {
      v.dependent = true;
      v.option = DependenceOption::AllSkew;
    } else {
      const Eigen::JacobiSVD<Eigen::Matrix3d> sa(a, Eigen::ComputeFullU);
      const auto& sv = sa.singularValues();
      if (sv(1) > tol * sv(0) && sv(2) <= tol * sv(0)) {
        const Eigen::Vector3d normal = sa.matrixU().col(2);
        double num = 0.0, den = 0.0;
        std::array<Eigen::Vector3d, 3> proj, rot;
        for (int k = 0; k < 3; ++k) {
          proj[k] = d[k].imag_part - normal.dot(d[k].imag_part) * normal;
          rot[k] = normal.cross(d[k].real_part);
          num += proj[k].dot(rot[k]);
          den += rot[k].squaredNorm();
        }
        v.beta = num / den;
        double res = 0.0, size = 0.0;
        for (int k = 0; k < 3; ++k) {
          res += (proj[k] - v.beta * rot[k]).squaredNorm();
          size += proj[k].squaredNorm() + rot[k].squaredNorm();
        }
        if (std::sqrt(res) <= tol * std::max(1.0, std::sqrt(size))) {
          v.dependent = true;
          v.option = DependenceOption::RotatedProjection;
        }
      }
    }
  }

  std::vector<VectorField> fields;
  for (const auto& op : operators) fields.push_back(g_field(op));
  for (const auto& p : sample_interior(20, seed))
    v.numeric_rank = std::max(v.numeric_rank, pointwise_rank(fields, p));
  v.numeric_agrees = v.dependent == (v.numeric_rank < static_cast<int>(n));
  return v;
}

// ------------------------------------------------------------ Lie closure

std::vector<NamedField> noise_generators(const ModelSpec& model) {
  std::vector<NamedField> out;
  for (std::size_t k = 0; k < model.channels.size(); ++k)
    if (model.channels[k].efficiency > 0.0)
      out.push_back({g_field(model.channels[k].op), "G" + std::to_string(k + 1)});
  return out;
}

std::vector<NamedField> drift_generators(const ModelSpec& model) {
  std::vector<NamedField> out;
  if (model.hamiltonian.norm() > 0.0) {
    VectorField h = hamiltonian_field(model.hamiltonian);
    if (!h.is_zero()) out.push_back({h, "H"});
  }
  for (std::size_t k = 0; k < model.channels.size(); ++k) {
    const auto& [L, eta] = model.channels[k];
    const std::string id = std::to_string(k + 1);
    if (eta < 1.0) out.push_back({f_field(L), "F" + id});
    if (eta > 0.0) out.push_back({drift_field(L, 1.0), "(F+D)" + id});
  }
  return out;
}

int LieBasis::max_rank() const {
  int r = 0;
  for (int k : pointwise_ranks) r = std::max(r, k);
  return r;
}

LieBasis lie_closure(const std::vector<NamedField>& noise,
                     const std::vector<NamedField>& drifts, const ClosureOptions& options) {
  if (options.sample_count < 1) throw InvalidState("need at least one sample point");
  LieBasis basis;
  basis.sample_points = sample_interior(options.sample_count, options.seed);
  basis.pointwise_ranks.assign(basis.sample_points.size(), 0);

  auto try_add = [&](const VectorField& f, const std::string& name) {
    if (f.is_zero()) return false;
    auto fields = basis.fields;
    fields.push_back(f);
    std::vector<int> ranks(basis.sample_points.size());
    bool raised = false;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      ranks[i] = pointwise_rank(fields, basis.sample_points[i], options.rank_threshold);
      raised = raised || ranks[i] > basis.pointwise_ranks[i];
    }
    if (!raised) return false;
    basis.fields.push_back(f);
    basis.provenance.push_back(name);
    basis.pointwise_ranks = std::move(ranks);
    return true;
  };
  auto bracket = [&](const VectorField& a, const std::string& an, const VectorField& b,
                     const std::string& bn) {
    const std::string label = "[" + an + ", " + bn + "]";
    try {
      return try_add(lie_bracket(a, b, options.degree_cap, label), label);
    } catch (const DegreeCapError&) {
      basis.capped.push_back(label);
      return false;
    }
  };

  for (const auto& g : noise) try_add(g.field, g.name);
  basis.converged = false;
  for (int depth = 1; depth <= options.max_depth; ++depth) {
    basis.depth = depth;
    bool changed = false;
    const auto fields = basis.fields;
    const auto names = basis.provenance;
    for (std::size_t i = 0; i < fields.size() && basis.max_rank() < 3; ++i) {
      for (const auto& d : drifts) {
        if (basis.max_rank() == 3) break;
        changed |= bracket(d.field, d.name, fields[i], names[i]);
      }
      for (std::size_t j = i + 1; j < fields.size() && basis.max_rank() < 3; ++j)
        changed |= bracket(fields[i], names[i], fields[j], names[j]);
    }
    if (!changed || basis.max_rank() == 3) {
      basis.converged = basis.max_rank() == 3 || basis.capped.empty();
      break;
    }
  }
  if (basis.fields.empty()) basis.converged = true;
  return basis;
}

LieBasis lie_closure(const ModelSpec& model, const ClosureOptions& options) {
  if (model.channels.empty()) throw InvalidState("model has no channels");
  return lie_closure(noise_generators(model), drift_generators(model), options);
}

// ------------------------------------------------------------ dimension

int pca_dimension(const ModelSpec& model, const Eigen::Vector3d& start, std::uint64_t seed,
                  double dt, double horizon, std::size_t n, double floor) {
  SimulationOptions opt;
  opt.stride = static_cast<std::size_t>(std::llround(horizon / dt));
  const auto ens = simulate_ensemble(model, density_from_bloch(BlochVector(start)), dt,
                                     horizon, n, seed, opt);
  const auto pts = ens.final_states();
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  cov /= static_cast<double>(pts.size());
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const Eigen::Vector3d ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 1e-300)) return 0;
  int count = 0;
  for (int k = 0; k < 3; ++k) count += ev(k) > floor * top;
  return count;
}

DimensionVerdict dimension(const ModelSpec& model, int sample_count, std::uint64_t seed) {
  if (sample_count < 10) throw InvalidState("need at least 10 sample points");
  ClosureOptions opt;
  opt.sample_count = sample_count;
  opt.seed = seed;

  DimensionVerdict v;
  v.basis = lie_closure(model, opt);
  v.sample_points = v.basis.sample_points;
  v.dimension = v.basis.max_rank();

  // One combined drift at perturbed efficiencies and channel weights.
  const CounterRng rng(derive_seed(seed, 0xC0FFEE));
  for (int draw = 0; draw < 3; ++draw) {
    std::vector<NamedField> noise;
    VectorField drift;
    if (model.hamiltonian.norm() > 0.0) drift += hamiltonian_field(model.hamiltonian);
    for (std::size_t k = 0; k < model.channels.size(); ++k) {
      const auto u = rng.uniforms(static_cast<std::uint64_t>(draw), static_cast<std::uint32_t>(k));
      const auto& [L, eta] = model.channels[k];
      const double weight = 0.5 + 1.5 * u[0];
      const double e = (eta > 0.0 && eta < 1.0) ? 0.1 + 0.8 * u[1] : eta;
      drift += weight * drift_field(L, e);
      if (e > 0.0) noise.push_back({g_field(L), "G" + std::to_string(k + 1)});
    }
    const auto b = lie_closure(noise, {{drift, "F"}}, opt);
    v.randomized_dimension = std::max(v.randomized_dimension, b.max_rank());
  }
  v.genericity_discrepancy = v.randomized_dimension != v.dimension;
  v.dimension = std::max(v.dimension, v.randomized_dimension);

  if (!v.basis.converged) {
    v.pca_components = pca_dimension(model, v.sample_points.front(), seed);
    if (*v.pca_components != v.dimension)
      throw NonConvergenceError("Lie closure did not settle within depth " +
                                std::to_string(opt.max_depth) + " (rank " +
                                std::to_string(v.dimension) + ") and the Monte Carlo cloud shows " +
                                std::to_string(*v.pca_components) + " components");
    v.confidence = Confidence::MonteCarloCorroborated;
  }
  return v;
}

}  // namespace qsde
