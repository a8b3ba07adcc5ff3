#include "mixonium/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mixonium/bloch.hpp"
#include "mixonium/diagnostics.hpp"
#include "mixonium/dressed.hpp"

namespace mixonium {

namespace {

constexpr Complex kI{0.0, 1.0};

double max_magnitude(const PolarizationSeries& p) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.p13.size(); ++i) {
    m = std::max({m, std::abs(p.p13[i]), std::abs(p.p23[i])});
  }
  return m;
}

bool is_real(std::span<const Complex> omega) {
  double peak = 0.0;
  double imag = 0.0;
  for (const auto& v : omega) {
    peak = std::max(peak, std::abs(v));
    imag = std::max(imag, std::abs(v.imag()));
  }
  return imag <= diagnostics::kRealTolerance * peak;
}

}  // namespace

PolarizationSeries ensemble_response(const FieldSnapshot& fields,
                                     const MediumContext& medium,
                                     std::vector<DensityMatrix>* line_center) {
  const std::size_t n = fields.omega_a.size();
  if (fields.omega_b.size() != n) {
    throw std::invalid_argument("ensemble_response: field series lengths differ");
  }
  PolarizationSeries out{ComplexSeries(n), ComplexSeries(n)};
  if (n == 0) {
    return out;
  }

  const auto& nodes = medium.ensemble.nodes;
  const std::size_t center = medium.ensemble.line_center_index;
  const BlochState start = BlochState::from_matrix(medium.initial_rho);
  const double trace0 = start.trace();
  const double dt = medium.dt;
  const Complex* a = fields.omega_a.data();
  const Complex* b = fields.omega_b.data();

  if (line_center != nullptr) {
    line_center->assign(n, DensityMatrix::Zero());
  }

  bool failed = false;
  double failed_delta = 0.0;
  const auto node_count = static_cast<long>(nodes.size());

  // Per-node storage, summed in node order afterwards, keeps the result
  // independent of the thread count.
  std::vector<ComplexSeries> node13(nodes.size(), ComplexSeries(n));
  std::vector<ComplexSeries> node23(nodes.size(), ComplexSeries(n));

#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < node_count; ++k) {
    const auto& node = nodes[static_cast<std::size_t>(k)];
    const bool record =
        line_center != nullptr && static_cast<std::size_t>(k) == center;
    ComplexSeries& p13 = node13[static_cast<std::size_t>(k)];
    ComplexSeries& p23 = node23[static_cast<std::size_t>(k)];
    BlochState s = start;
    p13[0] = s.r13;
    p23[0] = s.r23;
    if (record) {
      (*line_center)[0] = medium.initial_rho;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      rk4_step(s, a[i], b[i], a[i + 1], b[i + 1], node.delta, dt);
      p13[i + 1] = s.r13;
      p23[i + 1] = s.r23;
      if (record) {
        (*line_center)[i + 1] = s.to_matrix();
      }
    }
    // Non-finite values propagate to the final state.
    const double drift = std::abs(s.trace() - trace0);
    if (!(drift <= kTraceDriftLimit) || !std::isfinite(std::abs(s.r13)) ||
        !std::isfinite(std::abs(s.r23)) || !std::isfinite(std::abs(s.r12))) {
#pragma omp critical(mixonium_failure)
      {
        failed = true;
        failed_delta = node.delta;
      }
    }
  }

  const auto sample_count = static_cast<long>(n);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < sample_count; ++i) {
    Complex s13{};
    Complex s23{};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      s13 += nodes[k].weight * node13[k][static_cast<std::size_t>(i)];
      s23 += nodes[k].weight * node23[k][static_cast<std::size_t>(i)];
    }
    out.p13[static_cast<std::size_t>(i)] = s13;
    out.p23[static_cast<std::size_t>(i)] = s23;
  }

  if (failed) {
    std::ostringstream msg;
    msg << "ensemble_response: Bloch integration unstable at z = " << fields.z
        << " (delta = " << failed_delta << ")";
    throw NumericalAbort(msg.str());
  }
  return out;
}

FieldSnapshot maxwell_step(const FieldSnapshot& fields,
                           const PolarizationSeries& response,
                           const MediumContext& medium, double dz) {
  const std::size_t n = fields.omega_a.size();
  if (response.p13.size() != n || response.p23.size() != n) {
    throw std::invalid_argument("maxwell_step: response length mismatch");
  }
  const Complex slope = -kI * medium.mu;

  FieldSnapshot predicted = fields;
  predicted.z = fields.z + dz;
  if (medium.mu == 0.0) {
    return predicted;
  }
  for (std::size_t i = 0; i < n; ++i) {
    predicted.omega_a[i] += dz * slope * response.p13[i];
    predicted.omega_b[i] += dz * slope * response.p23[i];
  }

  const PolarizationSeries corrector = ensemble_response(predicted, medium);
  FieldSnapshot out = fields;
  out.z = predicted.z;
  const Complex half = 0.5 * dz * slope;
  for (std::size_t i = 0; i < n; ++i) {
    out.omega_a[i] += half * (response.p13[i] + corrector.p13[i]);
    out.omega_b[i] += half * (response.p23[i] + corrector.p23[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(std::abs(out.omega_a[i])) ||
        !std::isfinite(std::abs(out.omega_b[i]))) {
      std::ostringstream msg;
      msg << "maxwell_step: non-finite field at z = " << out.z;
      throw NumericalAbort(msg.str());
    }
  }
  return out;
}

void Scenario::validate() const {
  grid.validate();
  if (input_a.size() != grid.n_t || input_b.size() != grid.n_t) {
    throw std::invalid_argument("scenario: input envelopes must have n_t samples");
  }
  if (!std::isfinite(mu) || mu < 0.0) {
    throw std::invalid_argument("scenario: mu must be finite and nonnegative");
  }
  if (!(tau > 0.0)) {
    throw std::invalid_argument("scenario: tau must be positive");
  }
  if (ensemble.nodes.empty()) {
    throw std::invalid_argument("scenario: empty detuning ensemble");
  }
  if (snapshot_stride == 0) {
    throw std::invalid_argument("scenario: snapshot stride must be positive");
  }
  const RealSeries omega_t = dressed::total_rabi(input_a, input_b);
  if (!std::all_of(omega_t.begin(), omega_t.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("scenario: non-finite input envelope");
  }
  const double peak = *std::max_element(omega_t.begin(), omega_t.end());
  const double edge = std::max(omega_t.front(), omega_t.back());
  if (peak > 0.0 && edge > edge_tolerance * peak) {
    std::ostringstream msg;
    msg << "scenario: retarded-time window too narrow (edge/peak = "
        << edge / peak << " > " << edge_tolerance << ")";
    throw std::invalid_argument(msg.str());
  }
}

SnapshotObservables snapshot_observables(
    const FieldSnapshot& fields, const std::vector<DensityMatrix>& line_center,
    const Grid& grid) {
  SnapshotObservables obs;
  obs.z = fields.z;
  const double dt = grid.dt();
  const std::size_t n = fields.omega_a.size();

  if (is_real(fields.omega_a) && is_real(fields.omega_b)) {
    obs.area_a = diagnostics::pulse_area(fields.omega_a, dt);
    obs.area_b = diagnostics::pulse_area(fields.omega_b, dt);
  } else {
    obs.area_a = std::numeric_limits<double>::quiet_NaN();
    obs.area_b = std::numeric_limits<double>::quiet_NaN();
  }
  obs.area_total = diagnostics::total_area(fields.omega_a, fields.omega_b, dt);

  RealSeries mag_a(n);
  RealSeries mag_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    mag_a[i] = std::abs(fields.omega_a[i]);
    mag_b[i] = std::abs(fields.omega_b[i]);
  }
  const RealSeries omega_t = dressed::total_rabi(fields.omega_a, fields.omega_b);
  obs.peak_time_a = diagnostics::peak_time(mag_a, grid.t_min, dt);
  obs.peak_time_b = diagnostics::peak_time(mag_b, grid.t_min, dt);
  obs.peak_time_total = diagnostics::peak_time(omega_t, grid.t_min, dt);
  obs.peak_omega_t = diagnostics::peak_value(omega_t);

  if (!line_center.empty()) {
    obs.rho33.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      obs.rho33[i] = line_center[i](2, 2).real();
    }
    auto dark = dressed::dark_population_series(line_center, fields.omega_a,
                                                fields.omega_b);
    obs.dark_population = std::move(dark.value);
    obs.dark_valid = std::move(dark.valid);
    const auto peak_index = static_cast<std::size_t>(
        std::max_element(omega_t.begin(), omega_t.end()) - omega_t.begin());
    obs.dark_population_peak = obs.dark_population[peak_index];
  }
  return obs;
}

Trajectory propagate(const Scenario& scenario, const ProgressFn& progress) {
  scenario.validate();
  const Grid& grid = scenario.grid;

  MediumContext medium;
  medium.initial_rho = initial_density_matrix(scenario.prep);
  medium.ensemble = scenario.ensemble;
  medium.mu = scenario.mu;
  medium.dt = grid.dt();

  Trajectory trajectory;
  trajectory.grid = grid;

  FieldSnapshot fields{grid.z_min, scenario.input_a, scenario.input_b};
  const double dz = grid.dz();

  try {
    for (std::size_t j = 0; j <= grid.n_z; ++j) {
      const bool snapshot = j % scenario.snapshot_stride == 0 || j == grid.n_z;
      std::vector<DensityMatrix> line_center;
      PolarizationSeries response =
          ensemble_response(fields, medium, snapshot ? &line_center : nullptr);
      if (snapshot) {
        trajectory.observables.push_back(
            snapshot_observables(fields, line_center, grid));
        trajectory.snapshots.push_back(fields);
      }
      if (j == grid.n_z) {
        break;
      }

      std::size_t substeps = 1;
      const double pmax = max_magnitude(response);
      while (dz / static_cast<double>(substeps) * scenario.mu * pmax >
                 scenario.stability_limit &&
             substeps < (std::size_t{1} << 20)) {
        substeps *= 2;
      }
      const double h = dz / static_cast<double>(substeps);
      for (std::size_t s = 0; s < substeps; ++s) {
        if (s > 0) {
          response = ensemble_response(fields, medium);
        }
        fields = maxwell_step(fields, response, medium, h);
      }
      fields.z = grid.z(j + 1);
      trajectory.substeps += substeps;
      if (progress) {
        progress(j + 1, grid.n_z);
      }
    }
  } catch (const NumericalAbort& e) {
    trajectory.aborted = true;
    trajectory.failure = e.what();
  }
  return trajectory;
}

Scenario seed_with_analytic(Scenario scenario, const analytic::Params& params,
                            double z0) {
  const std::size_t n = scenario.grid.n_t;
  scenario.input_a.resize(n);
  scenario.input_b.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = analytic::mixonium_pulses(params, z0, scenario.grid.t(i));
    scenario.input_a[i] = p.a;
    scenario.input_b[i] = p.b;
  }
  const double depth = -params.kappa * z0;
  if (depth < 4.0) {
    std::ostringstream msg;
    msg << "analytic seed at kappa*z0 = " << -depth
        << " is not deep in the input regime (-kappa*z0 < 4)";
    scenario.warnings.push_back(msg.str());
  }
  return scenario;
}

}  // namespace mixonium
