#pragma once

#include <span>
#include <vector>

#include "mixonium/types.hpp"

// Bright/dark dressed basis of the two ground states:
//   |B> = (Omega_a |1> + Omega_b |2>) / Omega_T
//   |D> = (Omega_b* |1> - Omega_a* |2>) / Omega_T
// Only |B> couples to the excited state.
namespace mixonium::dressed {

/// Relative floor below which the dressed basis is treated as undefined.
inline constexpr double kRelativeFloor = 1e-12;

/// Thrown when Omega_T is at or below the floor.
class DegenerateField : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct DressedAmplitudes {
  Complex c_b;
  Complex c_d;
  double omega_t = 0.0;
};

double total_rabi(Complex omega_a, Complex omega_b);
RealSeries total_rabi(std::span<const Complex> omega_a,
                      std::span<const Complex> omega_b);

/// Dark Rabi frequency (2i / Omega_T^2)(Omega_a dOmega_b - Omega_b dOmega_a)
/// for real envelopes. Central differences inside, one-sided at the ends;
/// zero where Omega_T is below kRelativeFloor times the series peak. Throws
/// std::invalid_argument for complex input.
ComplexSeries dark_rabi(std::span<const Complex> omega_a,
                        std::span<const Complex> omega_b, double dt);

Eigen::Vector3cd bright_vector(Complex omega_a, Complex omega_b);
Eigen::Vector3cd dark_vector(Complex omega_a, Complex omega_b);

/// Projection of ground amplitudes onto |B>, |D>. `floor` is absolute.
DressedAmplitudes bright_dark_amplitudes(Complex c1, Complex c2,
                                         Complex omega_a, Complex omega_b,
                                         double floor = 0.0);

/// <D|rho|D>, the mixed-state generalization of |c_D|^2.
double dark_population(const DensityMatrix& rho, Complex omega_a,
                       Complex omega_b, double floor = 0.0);

/// Dark population along a snapshot. Samples where Omega_T falls below
/// kRelativeFloor * peak report 0 and a false entry in `valid`.
struct DarkPopulationSeries {
  RealSeries value;
  std::vector<bool> valid;
};
DarkPopulationSeries dark_population_series(std::span<const DensityMatrix> rho,
                                            std::span<const Complex> omega_a,
                                            std::span<const Complex> omega_b);

/// Hamiltonian (hbar = 1) written through the dressed basis: detuning on
/// |3> and coupling -Omega_T / 2 between |B> and |3>, expressed in the bare
/// basis.
DensityMatrix dressed_hamiltonian(Complex omega_a, Complex omega_b,
                                  double delta);

/// Bare-basis rotating-wave Hamiltonian, for comparison.
DensityMatrix bare_hamiltonian(Complex omega_a, Complex omega_b, double delta);

struct TwoLevelSeries {
  ComplexSeries c_b;
  ComplexSeries c3;
};

/// RK4 integration of the bright/excited pair driven by Omega_T, starting
/// from c_B = 1, c_3 = 0. Envelopes are linearly interpolated at half steps.
TwoLevelSeries two_level_reference(std::span<const double> omega_t,
                                   double delta, double dt);

}  // namespace mixonium::dressed
