#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mixonium/analytic.hpp"
#include "mixonium/medium.hpp"
#include "mixonium/trajectory.hpp"
#include "mixonium/types.hpp"

namespace mixonium {

/// Everything the Bloch side of a Maxwell step needs: the prepared state of
/// every atom, the line discretization and the retarded-time step.
struct MediumContext {
  DensityMatrix initial_rho = DensityMatrix::Zero();
  DetuningEnsemble ensemble;
  double mu = 0.0;
  double dt = 1.0;
};

struct PolarizationSeries {
  ComplexSeries p13;
  ComplexSeries p23;
};

/// Integrates every detuning node along T for the given fields and returns
/// the ensemble-averaged coherences at every sample. When `line_center` is
/// non-null it receives the line-center node's density matrices.
PolarizationSeries ensemble_response(const FieldSnapshot& fields,
                                     const MediumContext& medium,
                                     std::vector<DensityMatrix>* line_center =
                                         nullptr);

/// Heun predictor-corrector advance of dOmega_a/dZ = -i mu <rho_13>,
/// dOmega_b/dZ = -i mu <rho_23> by dz. `response` must be the ensemble
/// response to `fields`.
FieldSnapshot maxwell_step(const FieldSnapshot& fields,
                           const PolarizationSeries& response,
                           const MediumContext& medium, double dz);

/// Full simulation input.
struct Scenario {
  Grid grid;
  double mu = 0.0;
  /// Reference pulse width used for kappa and for reporting.
  double tau = 3.0;
  MediumPreparation prep;
  DetuningEnsemble ensemble;
  ComplexSeries input_a;
  ComplexSeries input_b;
  std::size_t snapshot_stride = 1;
  /// Upper bound on dz * mu * max|<rho>| per step; steps are halved until
  /// it holds.
  double stability_limit = 0.1;
  /// Relative envelope magnitude allowed at the window edges.
  double edge_tolerance = 1e-8;
  std::vector<std::string> warnings;

  /// Throws std::invalid_argument if the grid, the input sizes, or the
  /// window adequacy check fail.
  void validate() const;
};

using ProgressFn = std::function<void(std::size_t step, std::size_t total)>;

/// Marches the scenario from z_min to z_max. Numerical aborts are caught and
/// reported through Trajectory::aborted with the snapshots produced so far.
Trajectory propagate(const Scenario& scenario, const ProgressFn& progress = {});

/// Replaces the scenario inputs by the analytic mixonium pulses at depth z0,
/// so that numeric depth z corresponds to analytic depth z0 + z. Adds a
/// warning when -kappa z0 < 4.
Scenario seed_with_analytic(Scenario scenario, const analytic::Params& params,
                            double z0);

/// Observables for one snapshot; `line_center` may be empty.
SnapshotObservables snapshot_observables(
    const FieldSnapshot& fields, const std::vector<DensityMatrix>& line_center,
    const Grid& grid);

}  // namespace mixonium
