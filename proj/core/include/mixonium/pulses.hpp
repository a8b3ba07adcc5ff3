#pragma once

#include <string>

#include "mixonium/medium.hpp"
#include "mixonium/types.hpp"

namespace mixonium {

enum class PulseShape { gaussian, supergaussian, sech, analytic_seed };
enum class PulseTarget { pump, stokes };

/// Input envelope description. `area` is in radians; `width` and `offset` are
/// retarded times. Synthesized envelopes are real and normalized so that
/// their area equals `area`:
///   gaussian       area / (w sqrt(2 pi)) exp(-(T - T0)^2 / (2 w^2))
///   supergaussian  area / (w Gamma(1/4)) exp(-(T - T0)^4 / (2 w)^4)
///   sech           area / (pi w) sech((T - T0) / w)
struct PulseSpec {
  PulseShape shape = PulseShape::gaussian;
  double area = 0.0;
  double width = 1.0;
  double offset = 0.0;
  PulseTarget target = PulseTarget::pump;
};

/// Samples the envelope on the grid's retarded times. Throws
/// std::invalid_argument for width <= 0, for analytic_seed (which needs a
/// medium) and when the envelope at either window edge exceeds
/// `edge_tolerance` times its peak.
ComplexSeries synth_input(const PulseSpec& spec, const Grid& grid,
                          double edge_tolerance = 1e-8);

/// Density parameter mu for which the input-regime group velocity
/// 1 / (1 + zeta kappa tau) equals `target_vg_ratio`. Throws
/// std::invalid_argument unless 0 < target < 1 and zeta > 0.
double resolve_mu_for_velocity(double target_vg_ratio, double tau,
                               double zeta, const DetuningEnsemble& ensemble);

PulseShape parse_pulse_shape(const std::string& name);
std::string to_string(PulseShape shape);

}  // namespace mixonium
