// mixonium: run, tabulate and inspect two-pulse Lambda-medium propagation.
//
//   mixonium simulate <config>                       propagate and write a run
//   mixonium analytic <config>                       tabulate closed forms
//   mixonium areas <run-dir>                         print area records
//   mixonium fit <run-dir> --observable vg|beer      group velocity / Beer law
//   mixonium sweep <config> --vary lambda=0:1:0.1    one run per value
//
// Runs land in $MIXONIUM_OUTPUT_ROOT/<output.directory>. Exit status is 0 on
// success, 1 for configuration errors and 2 for numerical aborts.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "mixonium/artifacts.hpp"

namespace fs = std::filesystem;
namespace art = mixonium::artifacts;

namespace {

fs::path target_directory(const mixonium::RunConfig& config,
                          const std::string& override_dir) {
  return override_dir.empty() ? art::run_directory(config) : fs::path(override_dir);
}

void report(const art::RunResult& result) {
  for (const auto& warning : result.warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
  std::cout << result.directory.string() << ": " << result.snapshots
            << " snapshots";
  if (result.status != art::ok) {
    std::cout << ", aborted: " << result.failure;
  }
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-pulse propagation in partially coherent Lambda media"};
  app.require_subcommand(1);

  std::string config_path;
  std::string run_dir;
  std::string out_dir;
  std::string observable;
  std::string vary;
  bool quiet = false;
  bool analytic_sweep = false;
  unsigned workers = 0;

  auto* simulate = app.add_subcommand("simulate", "Propagate a configured scenario");
  simulate->add_option("config", config_path, "INI config or manifest.json")
      ->required();
  simulate->add_option("-o,--output", out_dir, "Run directory override");
  simulate->add_flag("-q,--quiet", quiet, "No progress output");

  auto* analytic = app.add_subcommand("analytic", "Tabulate the closed-form solutions");
  analytic->add_option("config", config_path, "INI config or manifest.json")
      ->required();
  analytic->add_option("-o,--output", out_dir, "Run directory override");

  auto* areas = app.add_subcommand("areas", "Print pulse areas of a run");
  areas->add_option("run", run_dir, "Run directory")->required();

  auto* fit = app.add_subcommand("fit", "Fit group velocity or Beer decay");
  fit->add_option("run", run_dir, "Run directory")->required();
  fit->add_option("--observable", observable, "vg or beer")
      ->required()
      ->check(CLI::IsMember({"vg", "beer"}));

  auto* sweep = app.add_subcommand("sweep", "Run one scenario per parameter value");
  sweep->add_option("config", config_path, "INI config or manifest.json")
      ->required();
  sweep->add_option("--vary", vary, "name=start:stop:step")->required();
  sweep->add_option("-o,--output", out_dir, "Sweep directory override");
  sweep->add_option("-j,--workers", workers, "Concurrent runs (0 = all cores)");
  sweep->add_flag("--analytic", analytic_sweep, "Tabulate instead of propagate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? art::ok : art::config_error;
  }

  try {
    if (*simulate) {
      const auto config = art::load_run_config(config_path);
      mixonium::ProgressFn progress;
      if (!quiet) {
        progress = [](std::size_t step, std::size_t total) {
          if (step == total || step % std::max<std::size_t>(total / 20, 1) == 0) {
            std::cerr << "\rstep " << step << "/" << total << std::flush;
          }
          if (step == total) {
            std::cerr << '\n';
          }
        };
      }
      const auto result =
          art::run(config, target_directory(config, out_dir), progress);
      report(result);
      return result.status;
    }
    if (*analytic) {
      const auto config = art::load_run_config(config_path);
      const auto result =
          art::analytic_export(config, target_directory(config, out_dir));
      report(result);
      return result.status;
    }
    if (*areas) {
      const auto loaded = art::load_run(run_dir);
      std::cout << art::areas_csv(loaded.trajectory, loaded.medium.kappa,
                                  loaded.z0);
      return art::ok;
    }
    if (*fit) {
      const auto loaded = art::load_run(run_dir);
      std::cout << art::fit_report(loaded, observable) << '\n';
      return art::ok;
    }
    if (*sweep) {
      const auto config = art::load_run_config(config_path);
      const auto spec = art::parse_sweep(vary);
      const auto result = art::sweep(config, spec,
                                     target_directory(config, out_dir),
                                     analytic_sweep, workers);
      for (const auto& r : result.runs) {
        report(r);
      }
      return result.status();
    }
  } catch (const mixonium::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return art::config_error;
  } catch (const mixonium::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << '\n';
    return art::numerical_abort;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return art::config_error;
  }
  return art::ok;
}
