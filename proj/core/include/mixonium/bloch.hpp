#pragma once

#include <span>
#include <vector>

#include "mixonium/medium.hpp"
#include "mixonium/types.hpp"

namespace mixonium {

/// Packed Hermitian 3x3 density matrix: three real populations and the
/// three upper-triangle coherences.
struct BlochState {
  double r11 = 1.0;
  double r22 = 0.0;
  double r33 = 0.0;
  Complex r12;
  Complex r13;
  Complex r23;

  static BlochState from_matrix(const DensityMatrix& rho);
  [[nodiscard]] DensityMatrix to_matrix() const;
  [[nodiscard]] double trace() const { return r11 + r22 + r33; }
  [[nodiscard]] double purity() const;
};

/// Time derivative of the undamped Lambda-system Bloch equations (hbar = 1,
/// H = delta |3><3| - Omega_a/2 |1><3| - Omega_b/2 |2><3| + h.c.).
BlochState bloch_rhs(const BlochState& s, Complex omega_a, Complex omega_b,
                     double delta);

/// One classical RK4 step from fields (a0, b0) at the left edge to (a1, b1)
/// at the right edge; half-step fields are the linear midpoint.
void rk4_step(BlochState& s, Complex a0, Complex b0, Complex a1, Complex b1,
              double delta, double dt);

/// Trace drift beyond which an integration is aborted.
inline constexpr double kTraceDriftLimit = 1e-6;

/// Integrates one atom along the retarded-time grid. Returns rho at every
/// sample, starting with `initial_rho`. Throws NumericalAbort on non-finite
/// values or trace drift above kTraceDriftLimit.
std::vector<DensityMatrix> bloch_integrate(const DensityMatrix& initial_rho,
                                           std::span<const Complex> omega_a,
                                           std::span<const Complex> omega_b,
                                           double delta, double dt);

struct Polarization {
  Complex p13;
  Complex p23;
};

/// Weighted ensemble averages <rho_13>, <rho_23> at one instant, one matrix
/// per node in ensemble order. Throws std::invalid_argument on a count
/// mismatch.
Polarization polarization_average(std::span<const DensityMatrix> atoms,
                                  const DetuningEnsemble& ensemble);

}  // namespace mixonium
