#include "mixonium/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace mixonium {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "run.name",
      "preparation.alpha_sq",
      "preparation.beta_sq",
      "preparation.lambda",
      "preparation.phi",
      "preparation.column_phase_1",
      "preparation.column_phase_2",
      "medium.mu",
      "medium.target_vg",
      "medium.kappa_tau",
      "medium.t2_star",
      "medium.nodes",
      "medium.quadrature",
      "medium.half_width",
      "medium.tau",
      "grid.t_min",
      "grid.t_max",
      "grid.n_t",
      "grid.depth",
      "grid.length",
      "grid.steps",
      "pump.shape",
      "pump.area",
      "pump.area_pi",
      "pump.width",
      "pump.offset",
      "stokes.shape",
      "stokes.area",
      "stokes.area_pi",
      "stokes.width",
      "stokes.offset",
      "seed.depth",
      "output.directory",
      "output.stride",
      "numerics.stability_limit",
      "numerics.edge_tolerance",
      "analytic.depths",
      "analytic.zeta_curves",
      "analytic.zeta_splits",
      "analytic.zeta_points",
      "diagnostics.regime_lower",
      "diagnostics.regime_upper",
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, std::string>& entries)
      : entries_(entries) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  bool has_section(const std::string& section) const {
    const std::string prefix = section + ".";
    for (const auto& [key, value] : entries_) {
      if (key.compare(0, prefix.size(), prefix) == 0) {
        return true;
      }
    }
    return false;
  }

  std::optional<std::string> text(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
      return std::nullopt;
    }
    return trim(it->second);
  }

  std::optional<double> number(const std::string& key) const {
    const auto raw = text(key);
    if (!raw) {
      return std::nullopt;
    }
    return parse_number(key, *raw);
  }

  double number(const std::string& key, double fallback) const {
    return number(key).value_or(fallback);
  }

  double required(const std::string& key) const {
    const auto v = number(key);
    if (!v) {
      throw ConfigError("missing required key '" + key + "'");
    }
    return *v;
  }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    const auto v = number(key);
    if (!v) {
      return fallback;
    }
    if (*v < 0.0 || std::floor(*v) != *v) {
      throw ConfigError("'" + key + "' must be a nonnegative integer");
    }
    return static_cast<std::size_t>(*v);
  }

  bool flag(const std::string& key, bool fallback) const {
    const auto raw = text(key);
    if (!raw) {
      return fallback;
    }
    if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
    if (*raw == "false" || *raw == "0" || *raw == "no") return false;
    throw ConfigError("'" + key + "' must be true or false");
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> out;
    const auto raw = text(key);
    if (!raw || raw->empty()) {
      return out;
    }
    std::stringstream stream(*raw);
    std::string item;
    while (std::getline(stream, item, ',')) {
      out.push_back(parse_number(key, trim(item)));
    }
    return out;
  }

 private:
  static double parse_number(const std::string& key, const std::string& raw) {
    double value = 0.0;
    const char* end = raw.data() + raw.size();
    const auto [ptr, ec] = std::from_chars(raw.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw ConfigError("'" + key + "' is not a number: '" + raw + "'");
    }
    return value;
  }

  const std::map<std::string, std::string>& entries_;
};

std::optional<PulseSpec> read_pulse(const Reader& in, const std::string& section,
                                    PulseTarget target) {
  if (!in.has_section(section)) {
    return std::nullopt;
  }
  PulseSpec spec;
  spec.target = target;
  try {
    spec.shape = parse_pulse_shape(in.text(section + ".shape").value_or("gaussian"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(section + ".shape: " + e.what());
  }
  if (spec.shape == PulseShape::analytic_seed) {
    return spec;
  }
  const auto area = in.number(section + ".area");
  const auto area_pi = in.number(section + ".area_pi");
  if (area.has_value() == area_pi.has_value()) {
    throw ConfigError("[" + section + "] needs exactly one of area, area_pi");
  }
  spec.area = area ? *area : *area_pi * kPi;
  spec.width = in.required(section + ".width");
  if (!(spec.width > 0.0)) {
    throw ConfigError(section + ".width must be positive");
  }
  spec.offset = in.number(section + ".offset", 0.0);
  return spec;
}

}  // namespace

RunConfig config_from_entries(std::map<std::string, std::string> entries) {
  for (const auto& [key, value] : entries) {
    if (known_keys().count(key) == 0) {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
  RunConfig config;
  config.entries = std::move(entries);
  const Reader in(config.entries);

  config.name = in.text("run.name").value_or("run");
  if (config.name.empty()) {
    throw ConfigError("run.name must not be empty");
  }

  const double alpha_sq = in.required("preparation.alpha_sq");
  const double beta_sq = in.number("preparation.beta_sq", 1.0 - alpha_sq);
  try {
    config.prep = make_medium_preparation(alpha_sq, beta_sq,
                                          in.number("preparation.lambda", 1.0),
                                          in.number("preparation.phi", 0.0));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[preparation] ") + e.what());
  }
  config.column_phase_1 = in.number("preparation.column_phase_1", 0.0);
  config.column_phase_2 = in.number("preparation.column_phase_2", 0.0);

  config.mu = in.number("medium.mu");
  config.target_vg = in.number("medium.target_vg");
  config.kappa_tau = in.number("medium.kappa_tau");
  if (int(config.mu.has_value()) + int(config.target_vg.has_value()) +
          int(config.kappa_tau.has_value()) !=
      1) {
    throw ConfigError("[medium] needs exactly one of mu, target_vg, kappa_tau");
  }
  if (config.kappa_tau && !(*config.kappa_tau > 0.0)) {
    throw ConfigError("medium.kappa_tau must be positive");
  }
  if (config.mu && *config.mu < 0.0) {
    throw ConfigError("medium.mu must be nonnegative");
  }
  config.t2_star = in.number("medium.t2_star", 1.0);
  config.nodes = static_cast<int>(in.count("medium.nodes", 41));
  const std::string rule = in.text("medium.quadrature").value_or("gauss_hermite");
  if (rule == "gauss_hermite") {
    config.rule = QuadratureRule::gauss_hermite;
  } else if (rule == "uniform") {
    config.rule = QuadratureRule::uniform;
  } else {
    throw ConfigError("medium.quadrature must be gauss_hermite or uniform");
  }
  config.half_width = in.number("medium.half_width", 8.0);
  config.tau = in.number("medium.tau", 3.0);
  if (!(config.t2_star > 0.0) || !(config.tau > 0.0)) {
    throw ConfigError("medium.t2_star and medium.tau must be positive");
  }
  if (config.nodes < 1 || config.nodes % 2 == 0) {
    throw ConfigError("medium.nodes must be odd and positive");
  }

  config.grid.t_min = in.number("grid.t_min", -60.0);
  config.grid.t_max = in.number("grid.t_max", 60.0);
  config.grid.n_t = in.count("grid.n_t", 2048);
  config.grid.n_z = in.count("grid.steps", 200);
  config.depth = in.number("grid.depth");
  config.length = in.number("grid.length");
  if (config.depth && config.length) {
    throw ConfigError("[grid] takes depth or length, not both");
  }
  try {
    Grid probe = config.grid;
    probe.z_max = 1.0;
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[grid] ") + e.what());
  }

  config.pump = read_pulse(in, "pump", PulseTarget::pump);
  config.stokes = read_pulse(in, "stokes", PulseTarget::stokes);
  const bool pump_seed =
      config.pump && config.pump->shape == PulseShape::analytic_seed;
  const bool stokes_seed =
      config.stokes && config.stokes->shape == PulseShape::analytic_seed;
  config.analytic_seed = in.has_section("seed") || pump_seed || stokes_seed;
  if (config.analytic_seed &&
      ((config.pump && !pump_seed) || (config.stokes && !stokes_seed))) {
    throw ConfigError(
        "an analytic seed replaces both input pulses; synthesized shapes "
        "cannot be combined with it");
  }
  config.seed_depth = in.number("seed.depth", -6.0);

  config.directory = in.text("output.directory").value_or(config.name);
  config.stride = in.count("output.stride", 1);
  if (config.stride == 0) {
    throw ConfigError("output.stride must be positive");
  }
  config.stability_limit = in.number("numerics.stability_limit", 0.1);
  config.edge_tolerance = in.number("numerics.edge_tolerance", 1e-8);
  if (!(config.stability_limit > 0.0) || !(config.edge_tolerance > 0.0)) {
    throw ConfigError("[numerics] limits must be positive");
  }

  config.frame_depths = in.list("analytic.depths");
  config.zeta_curves = in.flag("analytic.zeta_curves", false);
  if (in.has("analytic.zeta_splits")) {
    config.zeta_splits = in.list("analytic.zeta_splits");
  }
  for (double a2 : config.zeta_splits) {
    if (!(a2 >= 0.5 && a2 <= 1.0)) {
      throw ConfigError("analytic.zeta_splits entries must lie in [0.5, 1]");
    }
  }
  config.zeta_points = in.count("analytic.zeta_points", 101);
  if (config.zeta_points < 2) {
    throw ConfigError("analytic.zeta_points must be at least 2");
  }

  config.thresholds.lower = in.number("diagnostics.regime_lower", 0.1);
  config.thresholds.upper = in.number("diagnostics.regime_upper", 0.9);
  if (!(config.thresholds.lower < config.thresholds.upper)) {
    throw ConfigError("diagnostics.regime_lower must be below regime_upper");
  }
  return config;
}

RunConfig parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream stream(text);
  try {
    boost::property_tree::ini_parser::read_ini(stream, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }
  std::map<std::string, std::string> entries;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ConfigError("key '" + section + "' appears outside a section");
    }
    for (const auto& [key, value] : body) {
      entries[section + "." + key] = value.data();
    }
  }
  return config_from_entries(std::move(entries));
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str());
}

RunConfig with_entry(const RunConfig& config, const std::string& key,
                     const std::string& value) {
  auto entries = config.entries;
  entries[key] = value;
  return config_from_entries(std::move(entries));
}

std::string to_ini(const RunConfig& config) {
  std::ostringstream out;
  std::string current;
  for (const auto& [key, value] : config.entries) {
    const auto dot = key.find('.');
    const std::string section = key.substr(0, dot);
    if (section != current) {
      if (!current.empty()) {
        out << '\n';
      }
      out << '[' << section << "]\n";
      current = section;
    }
    out << key.substr(dot + 1) << " = " << value << '\n';
  }
  return out.str();
}

ResolvedRun resolve(const RunConfig& config) {
  ResolvedRun run;
  Scenario& scenario = run.scenario;
  try {
    scenario.ensemble =
        make_detuning_ensemble(config.t2_star, config.nodes, config.rule,
                               config.half_width);
    if (config.mu) {
      scenario.mu = *config.mu;
    } else if (config.kappa_tau) {
      // kappa is linear in mu.
      scenario.mu = *config.kappa_tau /
                    (config.tau * kappa(1.0, config.tau, scenario.ensemble));
    } else {
      scenario.mu = resolve_mu_for_velocity(*config.target_vg, config.tau,
                                            config.prep.zeta, scenario.ensemble);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[medium] ") + e.what());
  }
  run.medium = make_medium_params(scenario.mu, config.tau, scenario.ensemble);
  scenario.tau = config.tau;
  scenario.prep = config.prep;
  scenario.snapshot_stride = config.stride;
  scenario.stability_limit = config.stability_limit;
  scenario.edge_tolerance = config.edge_tolerance;

  run.params.tau = config.tau;
  run.params.kappa = run.medium.kappa;
  run.params.prep = config.prep;
  run.params.mu = scenario.mu;
  run.params.column_phase_1 = config.column_phase_1;
  run.params.column_phase_2 = config.column_phase_2;

  scenario.grid = config.grid;
  scenario.grid.z_min = 0.0;
  if (config.length) {
    scenario.grid.z_max = *config.length;
  } else if (config.depth) {
    if (!(run.medium.kappa > 0.0)) {
      throw ConfigError("grid.depth needs an absorbing medium; use grid.length");
    }
    scenario.grid.z_max = *config.depth / run.medium.kappa;
  } else {
    scenario.grid.z_max = 1.0;
  }
  if (!(scenario.grid.z_max > 0.0)) {
    throw ConfigError("medium length must be positive");
  }

  if (scenario.ensemble.size() > 1) {
    double spacing = std::numeric_limits<double>::infinity();
    const auto& nodes = scenario.ensemble.nodes;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      spacing = std::min(spacing, nodes[k].delta - nodes[k - 1].delta);
    }
    const double recurrence = kTwoPi / spacing;
    if (recurrence < scenario.grid.t_max - scenario.grid.t_min) {
      std::ostringstream msg;
      msg << "detuning grid rephases after " << recurrence
          << ", inside the retarded-time window; free-induction revivals "
             "will appear as spurious field";
      scenario.warnings.push_back(msg.str());
    }
  }

  if (config.analytic_seed) {
    if (!(run.medium.kappa > 0.0)) {
      throw ConfigError("an analytic seed needs an absorbing medium");
    }
    run.z0 = config.seed_depth / run.medium.kappa;
    scenario = seed_with_analytic(std::move(scenario), run.params, run.z0);
  } else {
    scenario.input_a.assign(config.grid.n_t, Complex{});
    scenario.input_b.assign(config.grid.n_t, Complex{});
    try {
      if (config.pump) {
        scenario.input_a =
            synth_input(*config.pump, scenario.grid, config.edge_tolerance);
      }
      if (config.stokes) {
        scenario.input_b =
            synth_input(*config.stokes, scenario.grid, config.edge_tolerance);
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return run;
}

}  // namespace mixonium
