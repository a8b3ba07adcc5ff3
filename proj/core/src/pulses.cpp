#include "mixonium/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mixonium {

namespace {

double envelope(const PulseSpec& spec, double t) {
  const double x = (t - spec.offset) / spec.width;
  switch (spec.shape) {
    case PulseShape::gaussian:
      return spec.area / (spec.width * std::sqrt(kTwoPi)) *
             std::exp(-0.5 * x * x);
    case PulseShape::supergaussian: {
      const double y = 0.5 * x;
      return spec.area / (spec.width * std::tgamma(0.25)) *
             std::exp(-(y * y) * (y * y));
    }
    case PulseShape::sech:
      return spec.area / (kPi * spec.width) / std::cosh(x);
    case PulseShape::analytic_seed:
      break;
  }
  throw std::invalid_argument(
      "synth_input: analytic_seed envelopes come from the analytic solution");
}

}  // namespace

ComplexSeries synth_input(const PulseSpec& spec, const Grid& grid,
                          double edge_tolerance) {
  if (!(spec.width > 0.0)) {
    throw std::invalid_argument("synth_input: width must be positive");
  }
  grid.validate();
  ComplexSeries out(grid.n_t);
  double peak = 0.0;
  for (std::size_t i = 0; i < grid.n_t; ++i) {
    const double v = envelope(spec, grid.t(i));
    out[i] = v;
    peak = std::max(peak, std::abs(v));
  }
  const double edge = std::max(std::abs(out.front()), std::abs(out.back()));
  if (peak > 0.0 && edge > edge_tolerance * peak) {
    std::ostringstream msg;
    msg << "synth_input: window too narrow for " << to_string(spec.shape)
        << " pulse (edge/peak = " << edge / peak << ")";
    throw std::invalid_argument(msg.str());
  }
  return out;
}

double resolve_mu_for_velocity(double target_vg_ratio, double tau,
                               double zeta, const DetuningEnsemble& ensemble) {
  if (!(target_vg_ratio > 0.0) || !(target_vg_ratio < 1.0)) {
    throw std::invalid_argument(
        "resolve_mu_for_velocity: target v_g/c must lie in (0, 1); "
        "v_g/c = 1 needs mu = 0");
  }
  if (!(zeta > 0.0) || !(tau > 0.0)) {
    throw std::invalid_argument(
        "resolve_mu_for_velocity: zeta and tau must be positive");
  }
  // kappa is linear in mu.
  const double kappa_per_mu = kappa(1.0, tau, ensemble);
  const double kappa_tau = (1.0 / target_vg_ratio - 1.0) / zeta;
  return kappa_tau / (tau * kappa_per_mu);
}

PulseShape parse_pulse_shape(const std::string& name) {
  if (name == "gaussian") return PulseShape::gaussian;
  if (name == "supergaussian") return PulseShape::supergaussian;
  if (name == "sech") return PulseShape::sech;
  if (name == "analytic_seed") return PulseShape::analytic_seed;
  throw std::invalid_argument("unknown pulse shape '" + name + "'");
}

std::string to_string(PulseShape shape) {
  switch (shape) {
    case PulseShape::gaussian:
      return "gaussian";
    case PulseShape::supergaussian:
      return "supergaussian";
    case PulseShape::sech:
      return "sech";
    case PulseShape::analytic_seed:
      return "analytic_seed";
  }
  return "?";
}

}  // namespace mixonium
