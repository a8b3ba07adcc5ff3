#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixonium/medium.hpp"
#include "mixonium/trajectory.hpp"
#include "mixonium/types.hpp"

namespace mixonium::diagnostics {

/// Relative imaginary part tolerated by operations defined for real
/// envelopes.
inline constexpr double kRealTolerance = 1e-8;

struct AreaRecord {
  double z = 0.0;
  double a_a = 0.0;
  double a_b = 0.0;
  double a_total = 0.0;
};

/// Uniform-grid quadrature of a real series (composite Simpson, with a 3/8
/// tail for an even sample count).
double integrate(std::span<const double> values, double dt);

/// Signed area of a real envelope. Throws std::invalid_argument when the
/// imaginary part exceeds kRealTolerance of the peak magnitude.
double pulse_area(std::span<const Complex> omega, double dt);

/// Area of Omega_T = sqrt(|Omega_a|^2 + |Omega_b|^2).
double total_area(std::span<const Complex> omega_a,
                  std::span<const Complex> omega_b, double dt);

AreaRecord area_record(const FieldSnapshot& snapshot, double dt);

/// Temporal mismatch of two real envelopes: tau times the Omega_T^2-weighted
/// mean of |d chi / dT|, chi = atan2(Omega_b, Omega_a),
///   tau * int |Omega_a Omega_b' - Omega_b Omega_a'| dT / int Omega_T^2 dT.
/// Zero for proportional envelopes.
double matching_metric(std::span<const Complex> omega_a,
                       std::span<const Complex> omega_b, double dt, double tau);

/// |dA/dZ + (alpha_d / 2) sin A| along an area series sampled every dz.
RealSeries area_theorem_residual(std::span<const double> areas, double alpha_d,
                                 double dz);

/// Sub-sample location of the maximum of `values` by parabolic
/// interpolation; `t0` is the time of sample 0.
double peak_time(std::span<const double> values, double t0, double dt);
double peak_value(std::span<const double> values);

enum class Observable { a, b, total };

struct VelocityFit {
  double slope = 0.0;     // d T_peak / d Z
  double vg_ratio = 1.0;  // v_g / c = 1 / (1 + slope)
  double rms_residual = 0.0;
  std::size_t samples = 0;
  bool regime_straddling = false;
};

/// Least-squares fit of the peak retarded time against Z over snapshots with
/// z in [z_lo, z_hi] (all snapshots by default). Requires at least five.
/// Flags `regime_straddling` when the rms residual exceeds
/// `straddle_tolerance` (time units).
VelocityFit group_velocity_fit(const Trajectory& trajectory, Observable which,
                               std::optional<double> z_lo = std::nullopt,
                               std::optional<double> z_hi = std::nullopt,
                               double straddle_tolerance = 0.05);

struct BeerFit {
  double alpha = 0.0;  // fitted intensity decay constant
  double beer_lengths = 0.0;
  bool insufficient_decay = false;
};

/// Largest total-Rabi area allowed at the input of a Beer-law fit.
inline constexpr double kWeakPulseArea = 0.05 * kPi;

/// Fits log of the peak |Omega_T|^2 against Z. Throws std::invalid_argument
/// if the input total area exceeds kWeakPulseArea.
BeerFit beer_decay_fit(const Trajectory& trajectory);

enum class RegimeLabel { I, II, III };

struct RegimeThresholds {
  double lower = 0.1;
  double upper = 0.9;
};

/// Classifies the fraction of the achievable bright-to-dark transfer,
/// (rho_DD - (1 - zeta)) / (2 zeta - 1), against the thresholds. For a pure
/// state this is the line-center dark population itself.
RegimeLabel regime_classify(double dark_population_peak,
                            const MediumPreparation& prep,
                            const RegimeThresholds& thresholds = {});

RegimeLabel regime_classify(const FieldSnapshot& snapshot,
                            const MediumPreparation& prep,
                            std::span<const DensityMatrix> line_center_atoms,
                            const Grid& grid,
                            const RegimeThresholds& thresholds = {});

std::string to_string(RegimeLabel label);

struct SechFit {
  double amplitude = 0.0;
  double width = 0.0;
  double center = 0.0;
  /// rms misfit relative to the amplitude
  double rms_relative = 0.0;
};

/// Least-squares fit of amplitude * sech((T - center) / width) to a
/// nonnegative envelope.
SechFit fit_sech(std::span<const double> values, double t0, double dt);

}  // namespace mixonium::diagnostics
