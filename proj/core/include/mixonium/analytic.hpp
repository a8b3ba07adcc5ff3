#pragma once

#include <array>

#include "mixonium/medium.hpp"
#include "mixonium/types.hpp"

/// Closed-form two-pulse solutions for a Lambda medium whose ground states
/// start in a partially coherent superposition.
///
/// The solutions are built in the frame that diagonalizes the prepared
/// density matrix (eigenvalues zeta, 1 - zeta) and rotated back with S.
/// Every exponential is evaluated after factoring out the largest exponent of
/// the common denominator, so arbitrarily large |T| and |Z| stay finite.
namespace mixonium::analytic {

struct Params {
  double tau = 1.0;
  /// Inverse absorption length; must come from mixonium::kappa with the same
  /// ensemble when the solution is compared against the propagator.
  double kappa = 1.0;
  MediumPreparation prep;
  double mu = 0.0;
  /// Extra phases on the first and second columns of S. They leave the
  /// prepared state, Omega_T and rho_33 unchanged.
  double column_phase_1 = 0.0;
  double column_phase_2 = 0.0;
};

struct PulsePair {
  Complex a;
  Complex b;
};

struct Areas {
  double a = 0.0;
  double b = 0.0;
  double total = 0.0;
};

enum class Regime { input, output };

/// Pulses for the diagonal preparation diag(zeta, 1 - zeta, 0). Both are real,
/// positive and bounded by 2 / tau.
PulsePair diagonal_pulses(const Params& params, double z, double t);

DensityMatrix diagonal_density_matrix(const Params& params, double delta,
                                      double z, double t);

PulsePair mixonium_pulses(const Params& params, double z, double t);

DensityMatrix mixonium_density_matrix(const Params& params, double delta,
                                      double z, double t);

/// Line-center rho_33.
double excited_state_probability(const Params& params, double z, double t);

/// Matched sech simultons of the input (-kappa z >> 1) or output
/// (kappa z >> 1) expansion. The caller picks the expansion explicitly.
PulsePair asymptotic_pulses(const Params& params, double z, double t,
                            Regime regime);

/// 1 / h(z) with h(z) = sqrt(1 + exp(2 (2 zeta - 1) kappa z)).
double inverse_area_function(const Params& params, double z);

/// Signed individual areas and the total-Rabi area (always 2 pi).
Areas analytic_pulse_areas(const Params& params, double z);

/// Pure-state probability amplitudes (c1, c2, c3) for lambda = 1, fixed to
/// the phase convention in which c1 -> -alpha in the output regime.
std::array<Complex, 3> pure_state_amplitudes(const Params& params,
                                             double delta, double z, double t);

/// Retarded-time location of the input-regime and output-regime peaks.
double asymptotic_peak_time(const Params& params, double z, Regime regime);

}  // namespace mixonium::analytic
