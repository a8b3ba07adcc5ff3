#pragma once

#include <string>
#include <vector>

#include "mixonium/medium.hpp"
#include "mixonium/types.hpp"

namespace mixonium {

/// Complex envelopes on the retarded-time grid at one depth.
struct FieldSnapshot {
  double z = 0.0;
  ComplexSeries omega_a;
  ComplexSeries omega_b;
};

/// Per-snapshot observables. Line-center series are empty when the producer
/// did not have line-center atoms available.
struct SnapshotObservables {
  double z = 0.0;
  double area_a = 0.0;
  double area_b = 0.0;
  double area_total = 0.0;
  double peak_time_a = 0.0;
  double peak_time_b = 0.0;
  double peak_time_total = 0.0;
  double peak_omega_t = 0.0;
  /// Line-center <D|rho|D> at the Omega_T peak.
  double dark_population_peak = 0.0;
  RealSeries rho33;
  RealSeries dark_population;
  std::vector<bool> dark_valid;
};

struct Trajectory {
  Grid grid;
  std::vector<FieldSnapshot> snapshots;
  std::vector<SnapshotObservables> observables;
  bool aborted = false;
  std::string failure;
  /// Z steps actually taken, counting stability-guard substeps.
  std::size_t substeps = 0;
};

}  // namespace mixonium
