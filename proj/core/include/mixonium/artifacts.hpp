#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mixonium/config.hpp"
#include "mixonium/diagnostics.hpp"
#include "mixonium/propagator.hpp"
#include "mixonium/trajectory.hpp"

// On-disk layout of one run directory:
//
//   manifest.json        schema_version, kind (simulation | analytic), name,
//                        config, derived, units, grid, snapshots, files,
//                        status (ok | aborted), failure, warnings, substeps
//   snapshot_NNNN.csv    T, re_omega_a, im_omega_a, re_omega_b, im_omega_b,
//                        rho33, rho_dd, dressed_valid
//   areas.csv            z, kappa_z, area_a, area_b, area_total, peak_time_a,
//                        peak_time_b, peak_time_total, peak_omega_t,
//                        dark_population_peak
//   diagnostics.json     regimes, matching metrics, fits
//   zeta_curves.csv      alpha_sq, lambda, zeta, cos_theta, sin_theta
//                        (analytic runs with zeta_curves = true)
//
// rho33 and rho_dd refer to the line-center atom. Numbers are written in
// shortest round-trip form so re-running a manifest reproduces files
// byte for byte.
namespace mixonium::artifacts {

inline constexpr int kSchemaVersion = 1;

enum ExitStatus : int { ok = 0, config_error = 1, numerical_abort = 2 };

/// MIXONIUM_OUTPUT_ROOT if set, else the current directory.
std::filesystem::path output_root();

/// output_root() / config.directory
std::filesystem::path run_directory(const RunConfig& config);

struct RunResult {
  int status = ok;
  std::filesystem::path directory;
  std::string failure;
  std::size_t snapshots = 0;
  std::vector<std::string> warnings;
};

/// Propagates the configured scenario and writes the run directory. Aborted
/// propagations still write every snapshot produced, with status "aborted".
RunResult run(const RunConfig& config, const std::filesystem::path& directory,
              const ProgressFn& progress = {});
RunResult run(const RunConfig& config);

/// Tabulates the closed-form solutions at the configured depths using the
/// same file schema, flagged kind = analytic.
RunResult analytic_export(const RunConfig& config,
                          const std::filesystem::path& directory);
RunResult analytic_export(const RunConfig& config);

/// Reads an INI config, or the config echoed inside a manifest.json.
RunConfig load_run_config(const std::filesystem::path& path);

struct LoadedRun {
  std::string kind;
  RunConfig config;
  Trajectory trajectory;
  MediumParams medium;
  double tau = 0.0;
  double z0 = 0.0;
};

/// Loads a run directory written by run() or analytic_export(). Throws
/// ConfigError for missing files or a schema mismatch.
LoadedRun load_run(const std::filesystem::path& directory);

std::vector<diagnostics::AreaRecord> area_records(const Trajectory& trajectory);
std::string areas_csv(const Trajectory& trajectory, double kappa, double z0);

/// JSON text of a group-velocity ("vg") or Beer-law ("beer") fit.
std::string fit_report(const LoadedRun& run, const std::string& observable);

struct SweepSpec {
  std::string key;  // "section.key"
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  [[nodiscard]] std::vector<double> values() const;
};

/// Parses "name=start:stop:step". Short names (lambda, alpha_sq, phi, mu,
/// target_vg, tau, depth) map to their sections.
SweepSpec parse_sweep(const std::string& text);

struct SweepResult {
  std::vector<double> values;
  std::vector<RunResult> runs;
  [[nodiscard]] int status() const;
};

/// Runs one scenario per value on `workers` threads (0 = hardware
/// concurrency), each into its own subdirectory of `directory`, and writes
/// sweep.csv.
SweepResult sweep(const RunConfig& config, const SweepSpec& spec,
                  const std::filesystem::path& directory, bool analytic,
                  unsigned workers = 0);

}  // namespace mixonium::artifacts
