#pragma once

#include <cstddef>
#include <vector>

#include "mixonium/types.hpp"

namespace mixonium {

/// Initial ground-state preparation of every atom in the medium together
/// with the quantities derived from diagonalizing it.
///
/// The prepared density matrix is
///
///     | a2                  l*a*b*exp(i phi)  0 |
///     | l*a*b*exp(-i phi)   b2                0 |
///     | 0                   0                 0 |
///
/// with a = sqrt(alpha_sq), b = sqrt(beta_sq), l = lambda. Its two nonzero
/// eigenvalues are zeta (the interaction parameter) and 1 - zeta; the
/// rotation built from (cos_theta, sin_theta, phi) diagonalizes it.
struct MediumPreparation {
  double alpha_sq = 1.0;
  double beta_sq = 0.0;
  double lambda = 1.0;
  double phi = 0.0;

  double zeta = 1.0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;

  [[nodiscard]] double alpha() const;
  [[nodiscard]] double beta() const;
  /// Output-regime pulse ratio Omega_a / Omega_b for phi = 0.
  [[nodiscard]] double tan_theta() const { return sin_theta / cos_theta; }
};

/// Validates populations and coherence and derives zeta and the rotation.
/// Throws std::invalid_argument on populations outside [0, 1], a sum that
/// differs from one by more than 1e-12, alpha_sq < beta_sq, or lambda outside
/// [0, 1].
MediumPreparation make_medium_preparation(double alpha_sq, double beta_sq,
                                          double lambda, double phi = 0.0);

DensityMatrix initial_density_matrix(const MediumPreparation& prep);

/// The 3x3 unitary S whose first two columns are the eigenvectors of the
/// prepared ground-state block for eigenvalues zeta and 1 - zeta.
DensityMatrix rotation_matrix(const MediumPreparation& prep);

enum class QuadratureRule {
  /// Gauss-Hermite nodes for the Gaussian line (Golub-Welsch).
  gauss_hermite,
  /// Equally spaced trapezoid nodes over +-half_width line widths. Resolves
  /// features narrower than the Gauss-Hermite node spacing and pushes the
  /// free-induction recurrence time out to 2 pi / spacing.
  uniform,
};

struct DetuningNode {
  double delta = 0.0;
  double weight = 1.0;
};

/// Discretization of the inhomogeneous line
/// F(delta) = t2_star / sqrt(2 pi) * exp(-(t2_star delta)^2 / 2).
struct DetuningEnsemble {
  double t2_star = 1.0;
  QuadratureRule rule = QuadratureRule::gauss_hermite;
  std::vector<DetuningNode> nodes;
  std::size_t line_center_index = 0;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Builds a normalized, symmetric ensemble with an exact line-center node.
/// `n_nodes` must be odd and positive; n_nodes == 1 yields the single
/// unbroadened node. `half_width` (in units of 1/t2_star) only applies to the
/// uniform rule.
DetuningEnsemble make_detuning_ensemble(
    double t2_star, int n_nodes,
    QuadratureRule rule = QuadratureRule::gauss_hermite,
    double half_width = 8.0);

/// Inverse absorption length for pulse width tau,
/// (mu tau / 2) * sum_k w_k / (1 + (delta_k tau)^2).
double kappa(double mu, double tau, const DetuningEnsemble& ensemble);

/// Line-center Beer coefficient sqrt(pi/2) * t2_star * mu (c = 1).
double beer_coefficient(double mu, double t2_star);

struct MediumParams {
  double mu = 0.0;
  double t2_star = 1.0;
  double alpha_d = 0.0;
  double kappa = 0.0;
};

MediumParams make_medium_params(double mu, double tau,
                                const DetuningEnsemble& ensemble);

/// Uniform retarded-time sampling and Z marching window. n_t counts samples,
/// n_z counts steps (n_z + 1 depth levels).
struct Grid {
  double t_min = -60.0;
  double t_max = 60.0;
  std::size_t n_t = 2048;
  double z_min = 0.0;
  double z_max = 1.0;
  std::size_t n_z = 100;

  [[nodiscard]] double dt() const {
    return (t_max - t_min) / static_cast<double>(n_t - 1);
  }
  [[nodiscard]] double dz() const {
    return (z_max - z_min) / static_cast<double>(n_z);
  }
  [[nodiscard]] double t(std::size_t i) const {
    return t_min + dt() * static_cast<double>(i);
  }
  [[nodiscard]] double z(std::size_t j) const {
    return z_min + dz() * static_cast<double>(j);
  }
  [[nodiscard]] RealSeries times() const;

  /// Throws std::invalid_argument for empty windows or fewer than two samples
  /// or steps.
  void validate() const;
};

}  // namespace mixonium
