#include "mixonium/analytic.hpp"

#include <algorithm>
#include <cmath>

namespace mixonium::analytic {

namespace {

constexpr Complex kI{0.0, 1.0};

// The f-functions of the diagonal solution, all sharing the denominator
// D = 2 cosh(a1) + exp(a3) with a1 = T/tau - zeta kappa Z,
// a3 = T/tau + (3 zeta - 2) kappa Z. Every term is stored relative to
// exp(m), m = max(a1, -a1, a3), so the scaled sum lies in [1, 3].
struct FFunctions {
  double f11 = 0.0;
  double f22 = 0.0;
  double f12 = 0.0;
  Complex f13;
  Complex f23;
  double inv_d = 0.0;       // 1 / D
  double ratio_b = 0.0;     // exp((2 zeta - 1) kappa Z) / D
};

FFunctions f_functions(const Params& params, double z, double t) {
  const double zeta = params.prep.zeta;
  const double u = t / params.tau;
  const double kz = params.kappa * z;

  const double a1 = u - zeta * kz;
  const double a2 = -a1;
  const double a3 = u + (3.0 * zeta - 2.0) * kz;
  const double m = std::max({a1, a2, a3});

  const double e1 = std::exp(a1 - m);
  const double e2 = std::exp(a2 - m);
  const double e3 = std::exp(a3 - m);
  const double scaled = e1 + e2 + e3;

  FFunctions f;
  f.inv_d = std::exp(-m) / scaled;
  // exp(T/tau - (1 - zeta) kappa Z) = exp((a1 + a3) / 2) and
  // exp((2 zeta - 1) kappa Z) = exp((a2 + a3) / 2); both are bounded by D/2.
  f.ratio_b = std::exp(0.5 * (a2 + a3) - m) / scaled;
  f.f11 = (e1 - e2 - e3) / scaled;
  f.f22 = (-e1 - e2 + e3) / scaled;
  f.f12 = 2.0 * std::exp(0.5 * (a1 + a3) - m) / scaled;
  f.f13 = 2.0 * kI * f.inv_d;
  f.f23 = 2.0 * kI * f.ratio_b;
  return f;
}

// S with optional column phases, 2x2 block only.
struct Rotation2 {
  Complex s11, s12, s21, s22;
};

Rotation2 rotation2(const Params& params) {
  const auto& prep = params.prep;
  const Complex phase = std::polar(1.0, prep.phi);
  const Complex c1 = std::polar(1.0, params.column_phase_1);
  const Complex c2 = std::polar(1.0, params.column_phase_2);
  return {prep.cos_theta * c1, prep.sin_theta * phase * c2,
          -prep.sin_theta * std::conj(phase) * c1, prep.cos_theta * c2};
}

DensityMatrix full_rotation(const Params& params) {
  const Rotation2 r = rotation2(params);
  DensityMatrix s = DensityMatrix::Zero();
  s(0, 0) = r.s11;
  s(0, 1) = r.s12;
  s(1, 0) = r.s21;
  s(1, 1) = r.s22;
  s(2, 2) = 1.0;
  return s;
}

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

PulsePair diagonal_pulses(const Params& params, double z, double t) {
  const FFunctions f = f_functions(params, z, t);
  const double scale = 4.0 / params.tau;
  return {scale * f.inv_d, scale * f.ratio_b};
}

DensityMatrix diagonal_density_matrix(const Params& params, double delta,
                                      double z, double t) {
  const FFunctions f = f_functions(params, z, t);
  const double zeta = params.prep.zeta;
  const double dtau = delta * params.tau;
  const double n = 1.0 / (1.0 + dtau * dtau);
  const Complex idt{0.0, dtau};

  DensityMatrix rho;
  rho(0, 0) = n * (zeta * (f.f11 * f.f11 + dtau * dtau) +
                   (1.0 - zeta) * f.f12 * f.f12);
  rho(1, 1) = n * (zeta * f.f12 * f.f12 +
                   (1.0 - zeta) * (f.f22 * f.f22 + dtau * dtau));
  rho(2, 2) = n * (zeta * std::norm(f.f13) + (1.0 - zeta) * std::norm(f.f23));
  rho(0, 1) = n * (zeta * (f.f11 - idt) * f.f12 +
                   (1.0 - zeta) * (f.f22 + idt) * f.f12);
  rho(0, 2) = n * (zeta * (f.f11 - idt) * f.f13 + (1.0 - zeta) * f.f12 * f.f23);
  rho(1, 2) = n * (zeta * f.f12 * f.f13 + (1.0 - zeta) * (f.f22 - idt) * f.f23);
  rho(1, 0) = std::conj(rho(0, 1));
  rho(2, 0) = std::conj(rho(0, 2));
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

PulsePair mixonium_pulses(const Params& params, double z, double t) {
  const PulsePair d = diagonal_pulses(params, z, t);
  const Rotation2 r = rotation2(params);
  return {r.s11 * d.a + r.s12 * d.b, r.s21 * d.a + r.s22 * d.b};
}

DensityMatrix mixonium_density_matrix(const Params& params, double delta,
                                      double z, double t) {
  const DensityMatrix s = full_rotation(params);
  return s * diagonal_density_matrix(params, delta, z, t) * s.adjoint();
}

double excited_state_probability(const Params& params, double z, double t) {
  const FFunctions f = f_functions(params, z, t);
  const double zeta = params.prep.zeta;
  return zeta * std::norm(f.f13) + (1.0 - zeta) * std::norm(f.f23);
}

double asymptotic_peak_time(const Params& params, double z, Regime regime) {
  const double zeta = params.prep.zeta;
  const double rate = regime == Regime::input ? zeta : 1.0 - zeta;
  return rate * params.kappa * z * params.tau;
}

PulsePair asymptotic_pulses(const Params& params, double z, double t,
                            Regime regime) {
  const double envelope =
      (2.0 / params.tau) *
      sech((t - asymptotic_peak_time(params, z, regime)) / params.tau);
  const Rotation2 r = rotation2(params);
  if (regime == Regime::input) {
    return {r.s11 * envelope, r.s21 * envelope};
  }
  return {r.s12 * envelope, r.s22 * envelope};
}

double inverse_area_function(const Params& params, double z) {
  const double x = 2.0 * (2.0 * params.prep.zeta - 1.0) * params.kappa * z;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return std::sqrt(e / (1.0 + e));
  }
  return 1.0 / std::sqrt(1.0 + std::exp(x));
}

Areas analytic_pulse_areas(const Params& params, double z) {
  if (params.prep.phi != 0.0 || params.column_phase_1 != 0.0 ||
      params.column_phase_2 != 0.0) {
    throw std::invalid_argument(
        "analytic_pulse_areas: signed areas require real solutions (phi = 0, "
        "no column phases)");
  }
  const double c = params.prep.cos_theta;
  const double s = params.prep.sin_theta;
  const double inv_h_plus = inverse_area_function(params, z);
  const double inv_h_minus = inverse_area_function(params, -z);
  Areas areas;
  areas.a = kTwoPi * (c * inv_h_plus + s * inv_h_minus);
  areas.b = kTwoPi * (-s * inv_h_plus + c * inv_h_minus);
  areas.total = std::hypot(areas.a, areas.b);
  return areas;
}

std::array<Complex, 3> pure_state_amplitudes(const Params& params,
                                             double delta, double z,
                                             double t) {
  if (params.prep.zeta != 1.0) {
    throw std::invalid_argument(
        "pure_state_amplitudes: preparation is not a pure state");
  }
  const FFunctions f = f_functions(params, z, t);
  const double dtau = delta * params.tau;
  const double n = 1.0 / std::sqrt(1.0 + dtau * dtau);
  const Complex d1 = n * (f.f11 - Complex{0.0, dtau});
  const Complex d2 = n * f.f12;
  const Complex d3 = n * std::conj(f.f13);
  const Rotation2 r = rotation2(params);
  return {r.s11 * d1 + r.s12 * d2, r.s21 * d1 + r.s22 * d2, d3};
}

}  // namespace mixonium::analytic
