#include "mixonium/bloch.hpp"

#include <cmath>
#include <string>

namespace mixonium {

namespace {

constexpr Complex kI{0.0, 1.0};

BlochState axpy(const BlochState& s, double h, const BlochState& k) {
  return {s.r11 + h * k.r11, s.r22 + h * k.r22, s.r33 + h * k.r33,
          s.r12 + h * k.r12, s.r13 + h * k.r13, s.r23 + h * k.r23};
}

bool finite(const BlochState& s) {
  return std::isfinite(s.r11) && std::isfinite(s.r22) &&
         std::isfinite(s.r33) && std::isfinite(s.r12.real()) &&
         std::isfinite(s.r12.imag()) && std::isfinite(s.r13.real()) &&
         std::isfinite(s.r13.imag()) && std::isfinite(s.r23.real()) &&
         std::isfinite(s.r23.imag());
}

}  // namespace

BlochState BlochState::from_matrix(const DensityMatrix& rho) {
  return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(),
          rho(0, 1),        rho(0, 2),        rho(1, 2)};
}

DensityMatrix BlochState::to_matrix() const {
  DensityMatrix rho;
  rho(0, 0) = r11;
  rho(1, 1) = r22;
  rho(2, 2) = r33;
  rho(0, 1) = r12;
  rho(0, 2) = r13;
  rho(1, 2) = r23;
  rho(1, 0) = std::conj(r12);
  rho(2, 0) = std::conj(r13);
  rho(2, 1) = std::conj(r23);
  return rho;
}

double BlochState::purity() const {
  return r11 * r11 + r22 * r22 + r33 * r33 +
         2.0 * (std::norm(r12) + std::norm(r13) + std::norm(r23));
}

BlochState bloch_rhs(const BlochState& s, Complex omega_a, Complex omega_b,
                     double delta) {
  const Complex ha = 0.5 * omega_a;
  const Complex hb = 0.5 * omega_b;
  BlochState d;
  // i x - i x* = -2 Im x
  d.r11 = -2.0 * (ha * std::conj(s.r13)).imag();
  d.r22 = -2.0 * (hb * std::conj(s.r23)).imag();
  d.r33 = -d.r11 - d.r22;
  d.r12 = kI * (ha * std::conj(s.r23) - std::conj(hb) * s.r13);
  d.r13 = kI * (delta * s.r13 - hb * s.r12 + ha * (s.r33 - s.r11));
  d.r23 = kI * (delta * s.r23 - ha * std::conj(s.r12) + hb * (s.r33 - s.r22));
  return d;
}

void rk4_step(BlochState& s, Complex a0, Complex b0, Complex a1, Complex b1,
              double delta, double dt) {
  const Complex ah = 0.5 * (a0 + a1);
  const Complex bh = 0.5 * (b0 + b1);
  const BlochState k1 = bloch_rhs(s, a0, b0, delta);
  const BlochState k2 = bloch_rhs(axpy(s, 0.5 * dt, k1), ah, bh, delta);
  const BlochState k3 = bloch_rhs(axpy(s, 0.5 * dt, k2), ah, bh, delta);
  const BlochState k4 = bloch_rhs(axpy(s, dt, k3), a1, b1, delta);
  const double w = dt / 6.0;
  s.r11 += w * (k1.r11 + 2.0 * (k2.r11 + k3.r11) + k4.r11);
  s.r22 += w * (k1.r22 + 2.0 * (k2.r22 + k3.r22) + k4.r22);
  s.r33 += w * (k1.r33 + 2.0 * (k2.r33 + k3.r33) + k4.r33);
  s.r12 += w * (k1.r12 + 2.0 * (k2.r12 + k3.r12) + k4.r12);
  s.r13 += w * (k1.r13 + 2.0 * (k2.r13 + k3.r13) + k4.r13);
  s.r23 += w * (k1.r23 + 2.0 * (k2.r23 + k3.r23) + k4.r23);
}

std::vector<DensityMatrix> bloch_integrate(const DensityMatrix& initial_rho,
                                           std::span<const Complex> omega_a,
                                           std::span<const Complex> omega_b,
                                           double delta, double dt) {
  if (omega_a.size() != omega_b.size()) {
    throw std::invalid_argument("bloch_integrate: field series lengths differ");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("bloch_integrate: dt must be positive");
  }
  const std::size_t n = omega_a.size();
  std::vector<DensityMatrix> out;
  out.reserve(n);
  if (n == 0) {
    return out;
  }

  BlochState s = BlochState::from_matrix(initial_rho);
  const double trace0 = s.trace();
  out.push_back(initial_rho);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    rk4_step(s, omega_a[i], omega_b[i], omega_a[i + 1], omega_b[i + 1], delta,
             dt);
    if (!finite(s) || std::abs(s.trace() - trace0) > kTraceDriftLimit) {
      throw NumericalAbort("bloch_integrate: instability at sample " +
                           std::to_string(i + 1) + " (delta = " +
                           std::to_string(delta) + ")");
    }
    out.push_back(s.to_matrix());
  }
  return out;
}

Polarization polarization_average(std::span<const DensityMatrix> atoms,
                                  const DetuningEnsemble& ensemble) {
  if (atoms.size() != ensemble.nodes.size()) {
    throw std::invalid_argument(
        "polarization_average: one density matrix per detuning node required");
  }
  Polarization p;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const double w = ensemble.nodes[k].weight;
    p.p13 += w * atoms[k](0, 2);
    p.p23 += w * atoms[k](1, 2);
  }
  return p;
}

}  // namespace mixonium
