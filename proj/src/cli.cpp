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

#include "qsde/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "qsde/accessibility.hpp"
#include "qsde/catalog.hpp"
#include "qsde/distributions.hpp"
#include "qsde/invariants.hpp"
#include "qsde/model_io.hpp"
#include "qsde/rng.hpp"
#include "qsde/sde.hpp"

namespace qsde::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

fs::path output_path(const std::string& given, const std::string& fallback) {
  if (!given.empty()) return given;
  if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return fs::path(dir) / fallback;
  return fallback;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

json provenance(const std::string& command, json config, json seeds) {
  return {{"tool", "qsde"},
          {"version", QSDE_VERSION},
          {"command", command},
          {"config", std::move(config)},
          {"seeds", std::move(seeds)}};
}

constexpr std::string_view kProvenancePrefix = "# provenance: ";

// --- shared option groups -------------------------------------------------

struct ModelOptions {
  std::string model_path;
  std::string preset;
  double eta = 1.0;

  void add(CLI::App& app) {
    app.add_option("--model", model_path, "Model JSON file (hamiltonian, channels)")
        ->check(CLI::ExistingFile);
    app.add_option("--preset", preset, "Preset model: HeH, HeN, HoH or HoN");
    app.add_option("--eta", eta, "Measurement efficiency of the preset channels")
        ->check(CLI::Range(0.0, 1.0));
  }
  ModelSpec resolve() const {
    if (model_path.empty() == preset.empty())
      throw InvalidState("give exactly one of --model and --preset");
    return preset.empty() ? load_model(model_path) : qsde::preset(parse_preset(preset), eta);
  }
  json config(const ModelSpec& m) const {
    json j{{"model", model_to_json(m)}};
    if (!preset.empty()) {
      j["preset"] = preset;
      j["eta"] = eta;
    }
    return j;
  }
};

struct StartOptions {
  double x = 0.0, y = 0.0, z = 1.0;
  void add(CLI::App& app) {
    app.add_option("--x", x, "Initial Bloch x (default 0)");
    app.add_option("--y", y, "Initial Bloch y (default 0)");
    app.add_option("--z", z, "Initial Bloch z (default 1, the excited state)");
  }
  Eigen::Vector3d vec() const { return {x, y, z}; }
};

struct RunOptions {
  double dt = 1e-4;
  double horizon = 2.0;
  std::size_t n = 100;
  std::uint64_t seed = 0;
  std::size_t stride = 1;
  std::size_t threads = 0;
  void add(CLI::App& app, bool seed_required = true) {
    app.add_option("--dt", dt, "Time step")->check(CLI::PositiveNumber);
    app.add_option("--horizon", horizon, "Simulated time span")->check(CLI::PositiveNumber);
    app.add_option("--n", n, "Number of trajectories")->check(CLI::PositiveNumber);
    auto* s = app.add_option("--seed", seed, "Base seed; trajectory i uses a seed derived from it");
    if (seed_required) s->required();
    app.add_option("--stride", stride, "Keep every stride-th step")->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  }
  SimulationOptions sim() const { return {stride, threads}; }
  json config() const {
    return {{"dt", dt}, {"horizon", horizon}, {"n", n}, {"seed", seed}, {"stride", stride}};
  }
};

struct DistOptions {
  std::string case_name;
  DistributionParams p;
  std::optional<double> z0;
  std::string branch = "singular";
  void add(CLI::App& app, bool with_branch = true) {
    app.add_option("--case", case_name, "heh-theta, heh-w, hen-phi, hen-latitude or hon-chi")
        ->required();
    app.add_option("--eta", p.eta, "Measurement efficiency")->check(CLI::Range(0.0, 1.0));
    app.add_option("--theta0", p.theta0, "Initial azimuth (heh-theta)");
    app.add_option("--w0", p.w0, "Initial atanh(z) (heh-w, heh-theta)");
    app.add_option("--z0", z0, "Initial z, alternative to --w0")->check(CLI::Range(-1.0, 1.0));
    app.add_option("--phi0", p.phi0, "Initial phi (hen-phi)")->check(CLI::NonNegativeNumber);
    app.add_option("--c0", p.c0, "Initial conserved c (hen-phi, hon-chi)");
    app.add_option("--chi0", p.chi0, "Initial chi (hon-chi)")->check(CLI::NonNegativeNumber);
    app.add_option("--k-max", p.k_max, "Image terms of the wrapped Gaussian");
    app.add_option("--n-max", p.n_max, "Laguerre terms kept")->check(CLI::PositiveNumber);
    app.add_option("--cells", p.grid_cells, "CDF tabulation cells")->check(CLI::PositiveNumber);
    if (with_branch)
      app.add_option("--branch", branch, "hon-chi series branch: singular or regular")
          ->check(CLI::IsMember({"singular", "regular"}));
  }
  DistributionCase dist_case() const { return parse_distribution_case(case_name); }
  DistributionParams params() const {
    DistributionParams q = p;
    if (z0) {
      if (std::abs(*z0) >= 1.0) throw InvalidState("--z0 must lie strictly inside (-1, 1)");
      q.w0 = std::atanh(*z0);
    }
    return q;
  }
  json config() const {
    const auto q = params();
    return {{"case", case_name}, {"eta", q.eta},     {"theta0", q.theta0}, {"w0", q.w0},
            {"phi0", q.phi0},    {"c0", q.c0},       {"chi0", q.chi0},     {"k_max", q.k_max},
            {"n_max", q.n_max},  {"cells", q.grid_cells}, {"branch", branch}};
  }
};

// --- ensemble CSV ----------------------------------------------------------

void write_ensemble_csv(std::ostream& out, const json& prov, const Ensemble& ens) {
  out << kProvenancePrefix << prov.dump() << '\n';
  const std::size_t m = ens.model.channels.size();
  out << "traj_id,t,x,y,z";
  for (std::size_t k = 0; k < m; ++k) out << ",dy_" << k + 1;
  out << '\n';
  std::string line;
  for (std::size_t id = 0; id < ens.trajectories.size(); ++id) {
    const auto& t = ens.trajectories[id];
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto& v = t.state(i);
      line = std::to_string(id) + ',' + num(t.times[i]) + ',' + num(v.x()) + ',' + num(v.y()) +
             ',' + num(v.z());
      for (std::size_t k = 0; k < m; ++k) line += ',' + num(t.record(i, k));
      out << line << '\n';
    }
  }
}

struct LoadedEnsemble {
  json provenance;
  Ensemble ensemble;
};

double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidState("malformed number '" + std::string(s) + "' in " + where);
  return v;
}

LoadedEnsemble read_ensemble_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  LoadedEnsemble le;
  std::string line;
  if (!std::getline(in, line) || !line.starts_with(kProvenancePrefix))
    throw InvalidState(path + ": missing provenance header");
  le.provenance = json::parse(line.substr(kProvenancePrefix.size()));
  const json& cfg = le.provenance.at("config");
  auto& ens = le.ensemble;
  ens.model = model_from_json(cfg.at("model"));
  ens.dt = cfg.at("dt").get<double>();
  ens.horizon = cfg.at("horizon").get<double>();
  ens.base_seed = cfg.at("seed").get<std::uint64_t>();
  const std::size_t m = ens.model.channels.size();
  if (!std::getline(in, line) || !line.starts_with("traj_id"))
    throw InvalidState(path + ": missing column header");

  std::vector<std::string_view> cells;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    cells.clear();
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      cells.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    cells.push_back(rest);
    if (cells.size() != 5 + m) throw InvalidState(path + ": wrong number of columns");
    const auto id = static_cast<std::size_t>(parse_double(cells[0], path));
    while (ens.trajectories.size() <= id) {
      Trajectory t;
      t.seed = derive_seed(ens.base_seed, ens.trajectories.size());
      t.dt = ens.dt;
      t.channels = m;
      ens.trajectories.push_back(std::move(t));
    }
    auto& t = ens.trajectories[id];
    t.times.push_back(parse_double(cells[1], path));
    t.states.emplace_back(parse_double(cells[2], path), parse_double(cells[3], path),
                          parse_double(cells[4], path));
    for (std::size_t k = 0; k < m; ++k) t.records.push_back(parse_double(cells[5 + k], path));
  }
  for (const auto& t : ens.trajectories)
    if (t.size() == 0) throw InvalidState(path + ": trajectory ids are not contiguous");
  return le;
}

double model_efficiency(const ModelSpec& m) {
  return m.channels.empty() ? 0.0 : m.channels.front().efficiency;
}

json report_json(const ConfinementReport& r, bool with_paths) {
  json j{{"kind", r.kind},
         {"eta", r.eta},
         {"max_residual", r.max_residual},
         {"rms_residual", r.rms_residual},
         {"scale", r.scale},
         {"normalized_max", r.normalized_max},
         {"normalized_rms", r.normalized_rms},
         {"pole_hit", r.pole_hit},
         {"samples", r.samples}};
  if (with_paths) {
    j["predicted_path"] = r.predicted_path;
    j["observed_path"] = r.observed_path;
  }
  return j;
}

// --- commands ---------------------------------------------------------------

int cmd_simulate(const ModelOptions& mo, const StartOptions& so, const RunOptions& ro,
                 const std::string& out_arg) {
  const ModelSpec model = mo.resolve();
  const DensityMatrix rho0 = density_from_bloch(BlochVector(so.vec()));
  json cfg = mo.config(model);
  cfg.update(ro.config());
  cfg["start"] = {so.x, so.y, so.z};
  const Ensemble ens = simulate_ensemble(model, rho0, ro.dt, ro.horizon, ro.n, ro.seed, ro.sim());
  const fs::path path = output_path(out_arg, "traj.csv");
  auto out = open_output(path);
  write_ensemble_csv(out, provenance("simulate", cfg, {{"base", ro.seed}}), ens);
  if (!out) throw IoError("write failed: " + path.string());
  std::cout << "wrote " << ens.trajectories.size() << " trajectories to " << path.string()
            << " (" << ens.projections() << " ball projections)\n";
  return kOk;
}

int cmd_verify(const ModelOptions& mo, const StartOptions& so, const RunOptions& ro,
               const std::string& kind_name, double beta, const std::string& ensemble_path,
               const std::string& out_arg) {
  const InvariantKind kind = parse_invariant(kind_name, beta);
  Ensemble ens;
  json cfg{{"kind", kind_name}, {"beta", beta}};
  if (!ensemble_path.empty()) {
    auto le = read_ensemble_csv(ensemble_path);
    cfg["ensemble"] = le.provenance;
    ens = std::move(le.ensemble);
  } else {
    ModelOptions m = mo;
    if (m.model_path.empty() && m.preset.empty()) m.preset = preset_name(matching_preset(kind));
    const ModelSpec model = m.resolve();
    cfg.update(m.config(model));
    cfg.update(ro.config());
    cfg["start"] = {so.x, so.y, so.z};
    ens = simulate_ensemble(model, density_from_bloch(BlochVector(so.vec())), ro.dt, ro.horizon,
                            ro.n, ro.seed, ro.sim());
  }
  const double eta = model_efficiency(ens.model);
  if (kind.tag != InvariantTag::StrSurfC &&
      !approx_equal(ens.model, preset(matching_preset(kind), eta)))
    throw InvalidState("'" + kind_name + "' is only deterministic under the " +
                       preset_name(matching_preset(kind)) + " preset");

  json per = json::array();
  std::size_t worst = 0, poles = 0;
  double mean = 0.0, worst_val = -1.0;
  std::vector<ConfinementReport> reports;
  for (std::size_t i = 0; i < ens.trajectories.size(); ++i) {
    reports.push_back(confinement_check(ens.trajectories[i], kind, eta));
    const auto& r = reports.back();
    if (r.normalized_max > worst_val) worst_val = r.normalized_max, worst = i;
    mean += r.normalized_max;
    poles += r.pole_hit;
    json row = report_json(r, false);
    row["traj_id"] = i;
    row["seed"] = ens.trajectories[i].seed;
    per.push_back(std::move(row));
  }
  mean /= static_cast<double>(reports.size());
  json rep{{"provenance", provenance("verify-invariant", cfg, {{"base", ens.base_seed}})},
           {"kind", invariant_name(kind)},
           {"eta", eta},
           {"trajectories", reports.size()},
           {"worst_normalized_max", worst_val},
           {"mean_normalized_max", mean},
           {"pole_hits", poles},
           {"projections", ens.projections()},
           {"worst", report_json(reports[worst], true)},
           {"per_trajectory", per}};
  rep["worst"]["traj_id"] = worst;
  const fs::path path = output_path(out_arg, "report.json");
  write_json(path, rep);
  std::cout << invariant_name(kind) << ": worst normalized residual " << worst_val << ", mean "
            << mean << " over " << reports.size() << " trajectories -> " << path.string() << '\n';
  return kOk;
}

std::vector<double> parse_grid(const std::string& grid, double lo, double hi) {
  std::size_t count = 400;
  if (!grid.empty()) {
    std::vector<std::string> parts;
    std::stringstream ss(grid);
    for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
    if (parts.size() != 3) throw InvalidState("--grid expects lo:hi:count");
    lo = parse_double(parts[0], "--grid");
    hi = parse_double(parts[1], "--grid");
    const double c = parse_double(parts[2], "--grid");
    if (!(hi > lo) || c < 2 || c != std::floor(c)) throw InvalidState("--grid needs lo < hi and count >= 2");
    count = static_cast<std::size_t>(c);
  }
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return g;
}

double resolve_clock(std::optional<double> clock, DistributionCase c) {
  if (!clock) return default_clock(c);
  if (!(*clock > 0.0)) throw InvalidState("--clock must be positive");
  return *clock;
}

ClosedFormDistribution make_distribution(const DistOptions& d, double t_sim, double clock) {
  if (d.branch == "regular" && d.dist_case() == DistributionCase::HonChi) {
    // The regular branch is only available as a pointwise density.
    throw InvalidState("--branch regular is available through the library only");
  }
  return ClosedFormDistribution::at_sim_time(d.dist_case(), d.params(), t_sim, clock);
}

int cmd_distribution(const DistOptions& d, double t_sim, std::optional<double> clock_opt,
                     const std::string& grid, const std::string& out_arg) {
  const DistributionCase c = d.dist_case();
  const double clock = resolve_clock(clock_opt, c);
  const auto params = d.params();
  std::vector<double> g;
  std::optional<ClosedFormDistribution> dist;
  std::optional<HonChiSeries> regular;
  if (d.branch == "regular" && c == DistributionCase::HonChi) {
    regular.emplace(clock * t_sim, params.chi0, params.c0, params.eta, params.n_max,
                    ChiBranch::Regular);
    g = parse_grid(grid, 0.0, 10.0);
  } else {
    dist.emplace(make_distribution(d, t_sim, clock));
    g = parse_grid(grid, dist->lower(), dist->upper());
  }
  json cfg = d.config();
  cfg["t"] = t_sim;
  cfg["clock"] = clock;
  cfg["grid"] = {g.front(), g.back(), g.size()};
  const fs::path path = output_path(out_arg, "pdf.csv");
  auto out = open_output(path);
  out << kProvenancePrefix << provenance("distribution", cfg, json::object()).dump() << '\n';
  out << "u,pdf" << (dist ? ",cdf" : "") << '\n';
  for (double u : g) {
    if (dist)
      out << num(u) << ',' << num(dist->pdf(u)) << ',' << num(dist->cdf(u)) << '\n';
    else
      out << num(u) << ',' << num((*regular)(u)) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
  std::cout << "wrote " << g.size() << " points of " << distribution_case_name(c)
            << " at formula time " << clock * t_sim << " to " << path.string() << '\n';
  return kOk;
}

int cmd_compare(const DistOptions& d, const RunOptions& ro, std::optional<double> clock_opt,
                const std::string& preset_arg, const std::string& ensemble_path,
                const std::string& out_arg) {
  const DistributionCase c = d.dist_case();
  const double clock = resolve_clock(clock_opt, c);
  const auto params = d.params();
  json cfg = d.config();
  cfg["clock"] = clock;
  Ensemble ens;
  if (!ensemble_path.empty()) {
    auto le = read_ensemble_csv(ensemble_path);
    cfg["ensemble"] = le.provenance;
    ens = std::move(le.ensemble);
  } else {
    const Preset p = preset_arg.empty() ? presets_for(c).front() : parse_preset(preset_arg);
    cfg["preset"] = preset_name(p);
    cfg.update(ro.config());
    ens = simulate_ensemble(preset(p, params.eta),
                            density_from_bloch(BlochVector(start_state(c, params))), ro.dt,
                            ro.horizon, ro.n, ro.seed, ro.sim());
  }
  const auto dist = make_distribution(d, ens.horizon, clock);
  const KsResult ks = compare_mc(dist, ens);
  json rep{{"provenance", provenance("compare", cfg, {{"base", ens.base_seed}})},
           {"case", distribution_case_name(c)},
           {"t", ens.horizon},
           {"tau", dist.tau()},
           {"clock", clock},
           {"statistic", ks.statistic},
           {"p_hint", ks.p_hint},
           {"n", ks.n},
           {"tail_ratio", dist.tail_ratio()},
           {"tabulated_mass", dist.tabulated_mass()}};
  const fs::path path = output_path(out_arg, "ks.json");
  write_json(path, rep);
  std::cout << distribution_case_name(c) << ": KS " << ks.statistic << " (p ~ " << ks.p_hint
            << ", n = " << ks.n << ") -> " << path.string() << '\n';
  return kOk;
}

int cmd_accessibility(const ModelOptions& mo, int samples, std::uint64_t seed,
                      const std::string& out_arg) {
  const ModelSpec model = mo.resolve();
  json cfg = mo.config(model);
  cfg["samples"] = samples;
  cfg["seed"] = seed;
  const DimensionVerdict v = dimension(model, samples, seed);
  json points = json::array();
  for (const auto& p : v.sample_points) points.push_back({p.x(), p.y(), p.z()});
  json rep{{"provenance", provenance("accessibility", cfg, {{"samples", seed}})},
           {"dimension", v.dimension},
           {"confidence", confidence_name(v.confidence)},
           {"randomized_dimension", v.randomized_dimension},
           {"genericity_discrepancy", v.genericity_discrepancy},
           {"converged", v.basis.converged},
           {"depth", v.basis.depth},
           {"basis", v.basis.provenance},
           {"pointwise_ranks", v.basis.pointwise_ranks},
           {"capped", v.basis.capped},
           {"sample_points", points}};
  rep["pca_components"] = v.pca_components ? json(*v.pca_components) : json(nullptr);
  const fs::path path = output_path(out_arg, "verdict.json");
  write_json(path, rep);
  std::cout << "dimension " << v.dimension << " (" << confidence_name(v.confidence) << ") -> "
            << path.string() << '\n';
  return kOk;
}

int cmd_catalog(std::uint64_t seed, int samples, const std::string& out_arg) {
  const CatalogReport r = catalog_check(seed, samples);
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"group", row.group},
                    {"name", row.name},
                    {"check", row.check},
                    {"model", row.model},
                    {"expected", row.expected},
                    {"obtained", row.obtained},
                    {"pass", row.pass},
                    {"note", row.note}});
  json rep{{"provenance",
            provenance("catalog", {{"seed", seed}, {"samples", samples}}, {{"draws", seed}})},
           {"rows_total", r.rows.size()},
           {"failures", r.failures()},
           {"all_pass", r.all_pass()},
           {"rows", rows}};
  const fs::path path = output_path(out_arg, "catalog_report.json");
  write_json(path, rep);
  for (const auto& row : r.rows)
    if (!row.pass)
      std::cout << "FAIL " << row.group << ": " << row.name << " (expected " << row.expected
                << ", got " << row.obtained << ")\n";
  std::cout << r.rows.size() - r.failures() << "/" << r.rows.size() << " rows agree -> "
            << path.string() << '\n';
  return kOk;
}

int cmd_calibrate(const DistOptions& d, const RunOptions& ro, const std::string& out_arg) {
  const DistributionCase c = d.dist_case();
  const auto params = d.params();
  const CalibrationResult r = calibrate_clock(c, params, ro.horizon, ro.dt, ro.n, ro.seed);
  json entry = d.config();
  entry.erase("case");
  entry.erase("branch");
  entry.update({{"preset", preset_name(r.preset)},
                {"horizon", r.horizon},
                {"dt", r.dt},
                {"n", r.n},
                {"seed", r.seed},
                {"candidates", r.candidates},
                {"ks", r.ks},
                {"chosen", r.chosen}});
  const fs::path path = output_path(out_arg, "clock_calibration.json");
  json file = json::object();
  if (fs::exists(path)) {
    std::ifstream in(path);
    file = json::parse(in);
  }
  file["tool"] = "qsde";
  file["version"] = QSDE_VERSION;
  file["entries"][distribution_case_name(c)] = entry;
  write_json(path, file);
  std::cout << distribution_case_name(c) << ": clock " << r.chosen << " ->" << ' '
            << path.string() << '\n';
  for (std::size_t i = 0; i < r.candidates.size(); ++i)
    std::cout << "  " << r.candidates[i] << "  KS " << r.ks[i] << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Simulation and analysis of continuously monitored qubits", "qsde"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QSDE_VERSION);

  std::string out;
  auto add_out = [&](CLI::App* sub, const std::string& fallback) {
    sub->add_option("--out", out,
                    "Output file (default " + fallback + " in $" + kOutputDirEnv +
                        " or the working directory)");
  };

  ModelOptions mo;
  StartOptions so;
  RunOptions ro;
  DistOptions dopt;
  std::string kind = "B_heh", ensemble, grid, preset_arg;
  double beta = 0.0, t_sim = 1.0;
  std::optional<double> clock;
  int samples = 12;
  std::uint64_t seed = 7, catalog_seed = 2024;

  auto* sim = app.add_subcommand("simulate", "Simulate an ensemble of trajectories to CSV");
  mo.add(*sim);
  so.add(*sim);
  ro.add(*sim);
  add_out(sim, "traj.csv");

  auto* ver = app.add_subcommand("verify-invariant",
                                 "Check a deterministic coordinate against its predicted evolution");
  ver->add_option("--kind", kind, "B_heh, C_hen, B_hoh, C_hon, F_hon or StrSurfC")->required();
  ver->add_option("--beta", beta, "Offset of y in StrSurfC");
  ver->add_option("--ensemble", ensemble, "Trajectory CSV written by simulate")
      ->check(CLI::ExistingFile);
  mo.add(*ver);
  so.add(*ver);
  ro.add(*ver, false);
  add_out(ver, "report.json");

  auto* dis = app.add_subcommand("distribution", "Tabulate a closed-form density and its CDF");
  dopt.add(*dis);
  dis->add_option("--t", t_sim, "Simulation time; formula time is clock * t")
      ->check(CLI::PositiveNumber);
  dis->add_option("--clock", clock, "Formula time per unit simulation time (default: calibrated)");
  dis->add_option("--grid", grid, "lo:hi:count (default: tabulated support, 400 points)");
  add_out(dis, "pdf.csv");

  auto* cmp = app.add_subcommand("compare", "Kolmogorov-Smirnov test of an ensemble against a density");
  dopt.add(*cmp, false);
  cmp->add_option("--clock", clock, "Formula time per unit simulation time (default: calibrated)");
  cmp->add_option("--ensemble", ensemble, "Trajectory CSV written by simulate")
      ->check(CLI::ExistingFile);
  cmp->add_option("--preset", preset_arg, "Preset to simulate when no ensemble is given");
  ro.add(*cmp, false);
  add_out(cmp, "ks.json");

  auto* acc = app.add_subcommand("accessibility", "Dimension of the reachable manifold of a model");
  mo.add(*acc);
  acc->add_option("--samples", samples, "Interior sample points")->check(CLI::PositiveNumber);
  acc->add_option("--seed", seed, "Seed of the sample points");
  add_out(acc, "verdict.json");

  auto* cat = app.add_subcommand("catalog", "Run the classification fixtures");
  cat->add_option("--seed", catalog_seed, "Seed of the fixture parameter draws");
  cat->add_option("--samples", samples, "Interior sample points")->check(CLI::PositiveNumber);
  add_out(cat, "catalog_report.json");

  auto* cal = app.add_subcommand("calibrate-clock",
                                 "Pick the formula-time clock factor that best fits simulation");
  dopt.add(*cal, false);
  ro.add(*cal);
  add_out(cal, "clock_calibration.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*sim) return cmd_simulate(mo, so, ro, out);
    if (*ver) return cmd_verify(mo, so, ro, kind, beta, ensemble, out);
    if (*dis) return cmd_distribution(dopt, t_sim, clock, grid, out);
    if (*cmp) {
      if (ensemble.empty() && cmp->count("--seed") == 0)
        throw InvalidState("compare needs --ensemble or an explicit --seed");
      return cmd_compare(dopt, ro, clock, preset_arg, ensemble, out);
    }
    if (*acc) return cmd_accessibility(mo, samples, seed, out);
    if (*cat) return cmd_catalog(catalog_seed, samples, out);
    if (*cal) return cmd_calibrate(dopt, ro, out);
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"qsde"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace qsde::cli
