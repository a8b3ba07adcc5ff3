#include "mixonium/artifacts.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mixonium/analytic.hpp"
#include "mixonium/dressed.hpp"

namespace mixonium::artifacts {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, end);
}

json finite_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string snapshot_name(std::size_t index) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "snapshot_%04zu.csv", index);
  return buffer;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot write " + path.string());
  }
  file << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw ConfigError("cannot read " + path.string());
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void prepare_directory(const fs::path& directory) {
  fs::create_directories(directory);
  for (const auto& entry : fs::directory_iterator(directory)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("snapshot_", 0) == 0 && entry.path().extension() == ".csv") {
      fs::remove(entry.path());
    }
  }
  fs::remove(directory / "FAILED");
}

std::string snapshot_csv(const FieldSnapshot& fields,
                         const SnapshotObservables& obs, const Grid& grid) {
  std::string out = "T,re_omega_a,im_omega_a,re_omega_b,im_omega_b,rho33,rho_dd,dressed_valid\n";
  out.reserve(fields.omega_a.size() * 160);
  for (std::size_t i = 0; i < fields.omega_a.size(); ++i) {
    const double rho33 = i < obs.rho33.size() ? obs.rho33[i] : kNaN;
    const double dark =
        i < obs.dark_population.size() ? obs.dark_population[i] : kNaN;
    const bool valid = i < obs.dark_valid.size() && obs.dark_valid[i];
    out += number(grid.t(i));
    out += ',';
    out += number(fields.omega_a[i].real());
    out += ',';
    out += number(fields.omega_a[i].imag());
    out += ',';
    out += number(fields.omega_b[i].real());
    out += ',';
    out += number(fields.omega_b[i].imag());
    out += ',';
    out += number(rho33);
    out += ',';
    out += number(dark);
    out += valid ? ",1\n" : ",0\n";
  }
  return out;
}

std::vector<std::vector<double>> read_csv(const fs::path& path,
                                          std::size_t columns) {
  std::istringstream in(read_text(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    std::vector<double> row;
    row.reserve(columns);
    std::size_t start = 0;
    while (start <= line.size()) {
      auto end = line.find(',', start);
      if (end == std::string::npos) {
        end = line.size();
      }
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(line.data() + start, line.data() + end, v);
      if (ec != std::errc() || ptr != line.data() + end) {
        throw ConfigError("malformed number in " + path.string());
      }
      row.push_back(v);
      start = end + 1;
    }
    if (row.size() != columns) {
      throw ConfigError("wrong column count in " + path.string());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json config_json(const RunConfig& config) {
  json out = json::object();
  for (const auto& [key, value] : config.entries) {
    const auto dot = key.find('.');
    out[key.substr(0, dot)][key.substr(dot + 1)] = value;
  }
  return out;
}

json grid_json(const Grid& grid, std::size_t stride) {
  return {{"t_min", grid.t_min}, {"t_max", grid.t_max}, {"n_t", grid.n_t},
          {"dt", grid.dt()},     {"z_min", grid.z_min}, {"z_max", grid.z_max},
          {"n_z", grid.n_z},     {"dz", grid.dz()},     {"stride", stride}};
}

json derived_json(const ResolvedRun& resolved, const RunConfig& config) {
  const auto& prep = config.prep;
  const double kt = resolved.medium.kappa * config.tau;
  return {
      {"zeta", prep.zeta},
      {"cos_theta", prep.cos_theta},
      {"sin_theta", prep.sin_theta},
      {"theta", std::atan2(prep.sin_theta, prep.cos_theta)},
      {"tan_theta", prep.tan_theta()},
      {"kappa", resolved.medium.kappa},
      {"alpha_d", resolved.medium.alpha_d},
      {"mu", resolved.medium.mu},
      {"tau", config.tau},
      {"t2_star", resolved.medium.t2_star},
      {"z0", resolved.z0},
      {"kappa_z0", resolved.z0 * resolved.medium.kappa},
      {"vg_input", 1.0 / (1.0 + prep.zeta * kt)},
      {"vg_output", 1.0 / (1.0 + (1.0 - prep.zeta) * kt)},
      {"detuning_nodes", resolved.scenario.ensemble.size()},
  };
}

json units_json() {
  return {{"time", "internal unit in which medium.t2_star is given; T is "
                   "retarded time t - x/c"},
          {"length", "Z = x/c in the time unit"},
          {"rabi_frequency", "inverse time unit"},
          {"depth", "kappa Z (absorption lengths)"},
          {"area", "radians"},
          {"c", "1"}};
}

json fit_json(const diagnostics::VelocityFit& fit) {
  return {{"slope", fit.slope},
          {"vg_ratio", fit.vg_ratio},
          {"rms_residual", fit.rms_residual},
          {"samples", fit.samples},
          {"regime_straddling", fit.regime_straddling}};
}

json optional_velocity_fit(const Trajectory& trajectory,
                           diagnostics::Observable which,
                           std::optional<double> lo, std::optional<double> hi) {
  try {
    return fit_json(diagnostics::group_velocity_fit(trajectory, which, lo, hi));
  } catch (const std::invalid_argument&) {
    return nullptr;
  }
}

json sech_json(const RealSeries& values, const Grid& grid) {
  const auto fit = diagnostics::fit_sech(values, grid.t_min, grid.dt());
  return {{"amplitude", fit.amplitude},
          {"width", fit.width},
          {"center", fit.center},
          {"rms_relative", fit.rms_relative}};
}

json diagnostics_json(const Trajectory& trajectory, const RunConfig& config,
                      const ResolvedRun& resolved) {
  json out = json::object();
  const Grid& grid = trajectory.grid;
  const double kappa = resolved.medium.kappa;

  json per_snapshot = json::array();
  double dark_max = 0.0;
  for (std::size_t k = 0; k < trajectory.snapshots.size(); ++k) {
    const auto& fields = trajectory.snapshots[k];
    const auto& obs = trajectory.observables[k];
    json row = {{"z", obs.z}, {"kappa_z", kappa * (resolved.z0 + obs.z)}};
    try {
      row["matching_metric"] = diagnostics::matching_metric(
          fields.omega_a, fields.omega_b, grid.dt(), config.tau);
    } catch (const std::invalid_argument&) {
      row["matching_metric"] = nullptr;
    }
    if (!obs.dark_population.empty()) {
      row["dark_population_peak"] = obs.dark_population_peak;
      row["regime"] = diagnostics::to_string(diagnostics::regime_classify(
          obs.dark_population_peak, config.prep, config.thresholds));
      for (std::size_t i = 0; i < obs.dark_population.size(); ++i) {
        if (obs.dark_valid[i]) {
          dark_max = std::max(dark_max, obs.dark_population[i]);
        }
      }
      row["rho33_peak"] = diagnostics::peak_value(obs.rho33);
    }
    per_snapshot.push_back(std::move(row));
  }
  out["snapshots"] = std::move(per_snapshot);
  out["max_dark_population"] = dark_max;

  json velocity = json::object();
  velocity["total"] = optional_velocity_fit(
      trajectory, diagnostics::Observable::total, std::nullopt, std::nullopt);
  if (kappa > 0.0) {
    // Depth bands well inside each asymptotic regime.
    const double in_hi = -3.0 / kappa - resolved.z0;
    const double out_lo = 3.0 / kappa - resolved.z0;
    velocity["input"] = optional_velocity_fit(
        trajectory, diagnostics::Observable::total, std::nullopt, in_hi);
    velocity["output"] = optional_velocity_fit(
        trajectory, diagnostics::Observable::total, out_lo, std::nullopt);
  }
  out["group_velocity"] = std::move(velocity);

  if (!trajectory.observables.empty() &&
      std::abs(trajectory.observables.front().area_total) <=
          diagnostics::kWeakPulseArea) {
    const auto beer = diagnostics::beer_decay_fit(trajectory);
    out["beer"] = {{"alpha", beer.alpha},
                   {"beer_lengths", beer.beer_lengths},
                   {"insufficient_decay", beer.insufficient_decay},
                   {"alpha_d", resolved.medium.alpha_d}};
  } else {
    out["beer"] = nullptr;
  }

  if (!trajectory.snapshots.empty()) {
    const auto& last = trajectory.snapshots.back();
    RealSeries mag_a(last.omega_a.size());
    RealSeries mag_b(last.omega_b.size());
    for (std::size_t i = 0; i < mag_a.size(); ++i) {
      mag_a[i] = std::abs(last.omega_a[i]);
      mag_b[i] = std::abs(last.omega_b[i]);
    }
    const RealSeries total = dressed::total_rabi(last.omega_a, last.omega_b);
    // Output simultons share one width w: |Omega_a| = |sin theta| 2 / w,
    // Omega_b = cos theta 2 / w at the peak.
    const double width =
        diagnostics::fit_sech(total, grid.t_min, grid.dt()).width;
    out["exit_sech"] = {
        {"a", sech_json(mag_a, grid)},
        {"b", sech_json(mag_b, grid)},
        {"total", sech_json(total, grid)},
        {"predicted_output",
         {{"amplitude_a", 2.0 / width * std::abs(config.prep.sin_theta)},
          {"amplitude_b", 2.0 / width * std::abs(config.prep.cos_theta)},
          {"width", width}}}};
  }
  return out;
}

RunResult write_run(const fs::path& directory, const std::string& kind,
                    const RunConfig& config, const ResolvedRun& resolved,
                    const Trajectory& trajectory,
                    const std::vector<std::string>& extra_files) {
  RunResult result;
  result.directory = directory;
  result.snapshots = trajectory.snapshots.size();
  result.warnings = resolved.scenario.warnings;
  const double kappa = resolved.medium.kappa;

  json snapshots = json::array();
  for (std::size_t k = 0; k < trajectory.snapshots.size(); ++k) {
    const std::string name = snapshot_name(k);
    write_text(directory / name,
               snapshot_csv(trajectory.snapshots[k], trajectory.observables[k],
                            trajectory.grid));
    const double z = trajectory.snapshots[k].z;
    snapshots.push_back(
        {{"file", name}, {"z", z}, {"kappa_z", kappa * (resolved.z0 + z)}});
  }
  write_text(directory / "areas.csv",
             areas_csv(trajectory, kappa, resolved.z0));
  write_text(directory / "diagnostics.json",
             diagnostics_json(trajectory, config, resolved).dump(2) + "\n");

  json files = {{"areas", "areas.csv"}, {"diagnostics", "diagnostics.json"}};
  for (const auto& extra : extra_files) {
    files[fs::path(extra).stem().string()] = extra;
  }

  json manifest = {
      {"schema_version", kSchemaVersion},
      {"kind", kind},
      {"name", config.name},
      {"config", config_json(config)},
      {"derived", derived_json(resolved, config)},
      {"units", units_json()},
      {"grid", grid_json(trajectory.grid, config.stride)},
      {"snapshots", std::move(snapshots)},
      {"files", std::move(files)},
      {"status", trajectory.aborted ? "aborted" : "ok"},
      {"failure", trajectory.failure},
      {"warnings", resolved.scenario.warnings},
      {"substeps", trajectory.substeps},
  };
  write_text(directory / "manifest.json", manifest.dump(2) + "\n");

  if (trajectory.aborted) {
    write_text(directory / "FAILED", trajectory.failure + "\n");
    result.status = numerical_abort;
    result.failure = trajectory.failure;
  }
  return result;
}

std::string sweep_alias(const std::string& name) {
  static const std::map<std::string, std::string> aliases{
      {"lambda", "preparation.lambda"},   {"alpha_sq", "preparation.alpha_sq"},
      {"phi", "preparation.phi"},         {"mu", "medium.mu"},
      {"kappa_tau", "medium.kappa_tau"},
      {"target_vg", "medium.target_vg"},  {"tau", "medium.tau"},
      {"depth", "grid.depth"}};
  const auto it = aliases.find(name);
  if (it != aliases.end()) {
    return it->second;
  }
  if (name.find('.') == std::string::npos) {
    throw ConfigError("unknown sweep parameter '" + name + "'");
  }
  return name;
}

}  // namespace

fs::path output_root() {
  const char* root = std::getenv("MIXONIUM_OUTPUT_ROOT");
  return root != nullptr && *root != '\0' ? fs::path(root) : fs::path(".");
}

fs::path run_directory(const RunConfig& config) {
  return output_root() / config.directory;
}

RunResult run(const RunConfig& config, const fs::path& directory,
              const ProgressFn& progress) {
  const ResolvedRun resolved = resolve(config);
  if (!config.analytic_seed && !config.pump && !config.stokes) {
    throw ConfigError("simulation needs [pump], [stokes] or [seed]");
  }
  try {
    resolved.scenario.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const Trajectory trajectory = propagate(resolved.scenario, progress);
  prepare_directory(directory);
  return write_run(directory, "simulation", config, resolved, trajectory, {});
}

RunResult run(const RunConfig& config) {
  return run(config, run_directory(config));
}

RunResult analytic_export(const RunConfig& config, const fs::path& directory) {
  ResolvedRun resolved = resolve(config);
  resolved.z0 = 0.0;
  // Propagation warnings do not apply to closed-form tables.
  resolved.scenario.warnings.clear();
  const analytic::Params& params = resolved.params;
  if (!config.frame_depths.empty() && !(params.kappa > 0.0)) {
    throw ConfigError("analytic frames need an absorbing medium (mu > 0)");
  }

  Trajectory trajectory;
  trajectory.grid = config.grid;
  const Grid& grid = trajectory.grid;
  for (double depth : config.frame_depths) {
    const double z = depth / params.kappa;
    FieldSnapshot fields{z, ComplexSeries(grid.n_t), ComplexSeries(grid.n_t)};
    std::vector<DensityMatrix> line_center(grid.n_t);
    for (std::size_t i = 0; i < grid.n_t; ++i) {
      const double t = grid.t(i);
      const auto pulses = analytic::mixonium_pulses(params, z, t);
      fields.omega_a[i] = pulses.a;
      fields.omega_b[i] = pulses.b;
      line_center[i] = analytic::mixonium_density_matrix(params, 0.0, z, t);
    }
    trajectory.observables.push_back(
        snapshot_observables(fields, line_center, grid));
    trajectory.snapshots.push_back(std::move(fields));
  }
  if (!trajectory.snapshots.empty()) {
    trajectory.grid.z_min = trajectory.snapshots.front().z;
    trajectory.grid.z_max = std::max(trajectory.snapshots.back().z,
                                     trajectory.grid.z_min + 1e-300);
    trajectory.grid.n_z = std::max<std::size_t>(trajectory.snapshots.size() - 1, 1);
  }

  prepare_directory(directory);
  std::vector<std::string> extra;
  if (config.zeta_curves) {
    std::string table = "alpha_sq,lambda,zeta,cos_theta,sin_theta\n";
    for (double a2 : config.zeta_splits) {
      for (std::size_t k = 0; k < config.zeta_points; ++k) {
        const double lambda =
            static_cast<double>(k) / static_cast<double>(config.zeta_points - 1);
        const auto prep = make_medium_preparation(a2, 1.0 - a2, lambda);
        table += number(a2) + "," + number(lambda) + "," + number(prep.zeta) +
                 "," + number(prep.cos_theta) + "," + number(prep.sin_theta) +
                 "\n";
      }
    }
    write_text(directory / "zeta_curves.csv", table);
    extra.emplace_back("zeta_curves.csv");
  }
  return write_run(directory, "analytic", config, resolved, trajectory, extra);
}

RunResult analytic_export(const RunConfig& config) {
  return analytic_export(config, run_directory(config));
}

RunConfig load_run_config(const fs::path& path) {
  if (path.extension() != ".json") {
    return load_config(path);
  }
  json manifest;
  try {
    manifest = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (!manifest.contains("config") || !manifest["config"].is_object()) {
    throw ConfigError("manifest has no config block");
  }
  std::map<std::string, std::string> entries;
  for (const auto& [section, body] : manifest["config"].items()) {
    for (const auto& [key, value] : body.items()) {
      entries[section + "." + key] = value.get<std::string>();
    }
  }
  return config_from_entries(std::move(entries));
}

LoadedRun load_run(const fs::path& directory) {
  const fs::path manifest_path = directory / "manifest.json";
  json manifest;
  try {
    manifest = json::parse(read_text(manifest_path));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
  if (manifest.value("schema_version", -1) != kSchemaVersion) {
    throw ConfigError("manifest schema version mismatch in " +
                      manifest_path.string());
  }
  try {
    LoadedRun loaded;
    loaded.kind = manifest.at("kind").get<std::string>();
    loaded.config = load_run_config(manifest_path);
    const auto& derived = manifest.at("derived");
    loaded.medium.mu = derived.at("mu").get<double>();
    loaded.medium.kappa = derived.at("kappa").get<double>();
    loaded.medium.alpha_d = derived.at("alpha_d").get<double>();
    loaded.medium.t2_star = derived.at("t2_star").get<double>();
    loaded.tau = derived.at("tau").get<double>();
    loaded.z0 = derived.at("z0").get<double>();

    const auto& g = manifest.at("grid");
    Grid grid;
    grid.t_min = g.at("t_min").get<double>();
    grid.t_max = g.at("t_max").get<double>();
    grid.n_t = g.at("n_t").get<std::size_t>();
    grid.z_min = g.at("z_min").get<double>();
    grid.z_max = g.at("z_max").get<double>();
    grid.n_z = g.at("n_z").get<std::size_t>();
    loaded.trajectory.grid = grid;
    loaded.trajectory.aborted = manifest.at("status") == "aborted";
    loaded.trajectory.failure = manifest.value("failure", "");
    loaded.trajectory.substeps = manifest.value("substeps", std::size_t{0});

    for (const auto& entry : manifest.at("snapshots")) {
      const auto rows =
          read_csv(directory / entry.at("file").get<std::string>(), 8);
      if (rows.size() != grid.n_t) {
        throw ConfigError("snapshot length does not match the grid");
      }
      FieldSnapshot fields{entry.at("z").get<double>(), ComplexSeries(rows.size()),
                           ComplexSeries(rows.size())};
      for (std::size_t i = 0; i < rows.size(); ++i) {
        fields.omega_a[i] = Complex(rows[i][1], rows[i][2]);
        fields.omega_b[i] = Complex(rows[i][3], rows[i][4]);
      }
      SnapshotObservables obs = snapshot_observables(fields, {}, grid);
      if (!rows.empty() && !std::isnan(rows[0][5])) {
        obs.rho33.resize(rows.size());
        obs.dark_population.resize(rows.size());
        obs.dark_valid.resize(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          obs.rho33[i] = rows[i][5];
          obs.dark_population[i] = rows[i][6];
          obs.dark_valid[i] = rows[i][7] != 0.0;
        }
        const RealSeries omega_t =
            dressed::total_rabi(fields.omega_a, fields.omega_b);
        const auto peak = static_cast<std::size_t>(
            std::max_element(omega_t.begin(), omega_t.end()) - omega_t.begin());
        obs.dark_population_peak = obs.dark_population[peak];
      }
      loaded.trajectory.snapshots.push_back(std::move(fields));
      loaded.trajectory.observables.push_back(std::move(obs));
    }
    return loaded;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
}

std::vector<diagnostics::AreaRecord> area_records(const Trajectory& trajectory) {
  std::vector<diagnostics::AreaRecord> out;
  out.reserve(trajectory.observables.size());
  for (const auto& obs : trajectory.observables) {
    out.push_back({obs.z, obs.area_a, obs.area_b, obs.area_total});
  }
  return out;
}

std::string areas_csv(const Trajectory& trajectory, double kappa, double z0) {
  std::string out =
      "z,kappa_z,area_a,area_b,area_total,peak_time_a,peak_time_b,"
      "peak_time_total,peak_omega_t,dark_population_peak\n";
  for (const auto& obs : trajectory.observables) {
    const double dark =
        obs.dark_population.empty() ? kNaN : obs.dark_population_peak;
    out += number(obs.z) + "," + number(kappa * (z0 + obs.z)) + "," +
           number(obs.area_a) + "," + number(obs.area_b) + "," +
           number(obs.area_total) + "," + number(obs.peak_time_a) + "," +
           number(obs.peak_time_b) + "," + number(obs.peak_time_total) + "," +
           number(obs.peak_omega_t) + "," + number(dark) + "\n";
  }
  return out;
}

std::string fit_report(const LoadedRun& run, const std::string& observable) {
  json out;
  try {
    if (observable == "vg") {
      const double kt = run.medium.kappa * run.tau;
      const double zeta = run.config.prep.zeta;
      out = {{"observable", "vg"},
             {"total", fit_json(diagnostics::group_velocity_fit(
                           run.trajectory, diagnostics::Observable::total))},
             {"a", fit_json(diagnostics::group_velocity_fit(
                       run.trajectory, diagnostics::Observable::a))},
             {"b", fit_json(diagnostics::group_velocity_fit(
                       run.trajectory, diagnostics::Observable::b))},
             {"predicted_input", 1.0 / (1.0 + zeta * kt)},
             {"predicted_output", 1.0 / (1.0 + (1.0 - zeta) * kt)}};
    } else if (observable == "beer") {
      const auto fit = diagnostics::beer_decay_fit(run.trajectory);
      out = {{"observable", "beer"},
             {"alpha", fit.alpha},
             {"beer_lengths", fit.beer_lengths},
             {"insufficient_decay", fit.insufficient_decay},
             {"alpha_d", run.medium.alpha_d},
             {"relative_error",
              finite_or_null(fit.alpha / run.medium.alpha_d - 1.0)}};
    } else {
      throw ConfigError("unknown fit observable '" + observable + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return out.dump(2);
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out;
  const double span = (stop - start) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(start + step * static_cast<double>(k));
  }
  return out;
}

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("sweep must look like name=start:stop:step");
  }
  SweepSpec spec;
  spec.key = sweep_alias(text.substr(0, eq));
  double parts[3] = {0.0, 0.0, 0.0};
  std::size_t start = eq + 1;
  for (int k = 0; k < 3; ++k) {
    auto end = k < 2 ? text.find(':', start) : text.size();
    if (end == std::string::npos) {
      throw ConfigError("sweep range must be start:stop:step");
    }
    const auto [ptr, ec] =
        std::from_chars(text.data() + start, text.data() + end, parts[k]);
    if (ec != std::errc() || ptr != text.data() + end) {
      throw ConfigError("sweep range must be start:stop:step");
    }
    start = end + 1;
  }
  spec.start = parts[0];
  spec.stop = parts[1];
  spec.step = parts[2];
  if (!(spec.step > 0.0) || spec.stop < spec.start) {
    throw ConfigError("sweep needs step > 0 and stop >= start");
  }
  return spec;
}

int SweepResult::status() const {
  int worst = ok;
  for (const auto& r : runs) {
    worst = std::max(worst, r.status);
  }
  return worst;
}

SweepResult sweep(const RunConfig& config, const SweepSpec& spec,
                  const fs::path& directory, bool analytic, unsigned workers) {
  SweepResult result;
  result.values = spec.values();
  const std::size_t n = result.values.size();

  // Validate every variant before starting any work.
  std::vector<RunConfig> variants;
  variants.reserve(n);
  const std::string short_key = spec.key.substr(spec.key.find('.') + 1);
  for (std::size_t k = 0; k < n; ++k) {
    auto entries = config.entries;
    entries[spec.key] = number(result.values[k]);
    if (spec.key == "preparation.alpha_sq") {
      entries["preparation.beta_sq"] = number(1.0 - result.values[k]);
    }
    RunConfig variant = config_from_entries(std::move(entries));
    char suffix[16];
    std::snprintf(suffix, sizeof suffix, "_%03zu", k);
    variant = with_entry(variant, "output.directory", short_key + suffix);
    variants.push_back(std::move(variant));
  }

  result.runs.resize(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const fs::path dir = directory / variants[k].directory;
      try {
        result.runs[k] = analytic ? analytic_export(variants[k], dir)
                                  : run(variants[k], dir);
      } catch (const ConfigError& e) {
        result.runs[k].status = config_error;
        result.runs[k].directory = dir;
        result.runs[k].failure = e.what();
      }
    }
  };
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }

  fs::create_directories(directory);
  std::string table = "index," + short_key + ",directory,status,failure\n";
  for (std::size_t k = 0; k < n; ++k) {
    std::string failure = result.runs[k].failure;
    std::replace(failure.begin(), failure.end(), ',', ';');
    std::replace(failure.begin(), failure.end(), '\n', ' ');
    table += std::to_string(k) + "," + number(result.values[k]) + "," +
             variants[k].directory + "," + std::to_string(result.runs[k].status) +
             "," + failure + "\n";
  }
  write_text(directory / "sweep.csv", table);
  return result;
}

}  // namespace mixonium::artifacts
