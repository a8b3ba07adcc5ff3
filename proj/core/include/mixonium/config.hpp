#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixonium/analytic.hpp"
#include "mixonium/diagnostics.hpp"
#include "mixonium/medium.hpp"
#include "mixonium/propagator.hpp"
#include "mixonium/pulses.hpp"

namespace mixonium {

/// Parsed run configuration. The file is INI-style:
///
///   [run]          name
///   [preparation]  alpha_sq, beta_sq, lambda, phi, column_phase_1/2
///   [medium]       mu | target_vg | kappa_tau, t2_star, nodes, quadrature, half_width, tau
///   [grid]         t_min, t_max, n_t, depth | length, steps
///   [pump] [stokes] shape, area | area_pi, width, offset
///   [seed]         depth
///   [output]       directory, stride
///   [numerics]     stability_limit, edge_tolerance
///   [analytic]     depths, zeta_curves, zeta_splits, zeta_points
///   [diagnostics]  regime_lower, regime_upper
///
/// Depths are in absorption lengths (kappa Z); all other quantities are in
/// internal units (c = 1, times in units of T2* when t2_star = 1).
struct RunConfig {
  /// "section.key" -> value exactly as read. Re-parsing these reproduces
  /// every other field.
  std::map<std::string, std::string> entries;

  std::string name = "run";
  MediumPreparation prep;
  double column_phase_1 = 0.0;
  double column_phase_2 = 0.0;

  std::optional<double> mu;
  std::optional<double> target_vg;
  /// Medium density given as kappa * tau at the reference width.
  std::optional<double> kappa_tau;
  double t2_star = 1.0;
  int nodes = 41;
  QuadratureRule rule = QuadratureRule::gauss_hermite;
  double half_width = 8.0;
  double tau = 3.0;

  Grid grid;
  std::optional<double> depth;
  std::optional<double> length;

  std::optional<PulseSpec> pump;
  std::optional<PulseSpec> stokes;
  bool analytic_seed = false;
  double seed_depth = -6.0;

  std::string directory;
  std::size_t stride = 1;
  double stability_limit = 0.1;
  double edge_tolerance = 1e-8;

  std::vector<double> frame_depths;
  bool zeta_curves = false;
  std::vector<double> zeta_splits{0.6, 0.7, 0.8, 0.9};
  std::size_t zeta_points = 101;

  diagnostics::RegimeThresholds thresholds;
};

/// Throws ConfigError on syntax errors, unknown keys, missing required keys
/// and values that violate the consumed types' validation rules.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_entries(std::map<std::string, std::string> entries);

/// Returns a copy with one "section.key" entry replaced and re-validated.
RunConfig with_entry(const RunConfig& config, const std::string& key,
                     const std::string& value);

std::string to_ini(const RunConfig& config);

/// Everything derived from a configuration before propagation.
struct ResolvedRun {
  Scenario scenario;
  analytic::Params params;
  MediumParams medium;
  /// Analytic depth of numeric z = 0 (zero unless seeded).
  double z0 = 0.0;
};

/// Builds the detuning ensemble, resolves mu, the Z window and the input
/// envelopes. Throws ConfigError for inconsistent combinations.
ResolvedRun resolve(const RunConfig& config);

}  // namespace mixonium
