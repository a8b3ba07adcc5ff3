#include "mixonium/medium.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace mixonium {

namespace {

constexpr double kPopulationSumTolerance = 1e-12;

void require(bool condition, const std::string& message) {
  if (!condition) {
    throw std::invalid_argument(message);
  }
}

}  // namespace

double MediumPreparation::alpha() const { return std::sqrt(alpha_sq); }

double MediumPreparation::beta() const { return std::sqrt(beta_sq); }

MediumPreparation make_medium_preparation(double alpha_sq, double beta_sq,
                                          double lambda, double phi) {
  require(std::isfinite(alpha_sq) && std::isfinite(beta_sq) &&
              std::isfinite(lambda) && std::isfinite(phi),
          "medium preparation: non-finite parameter");
  require(alpha_sq >= 0.0 && alpha_sq <= 1.0,
          "medium preparation: alpha_sq must lie in [0, 1]");
  require(beta_sq >= 0.0 && beta_sq <= 1.0,
          "medium preparation: beta_sq must lie in [0, 1]");
  require(std::abs(alpha_sq + beta_sq - 1.0) <= kPopulationSumTolerance,
          "medium preparation: alpha_sq + beta_sq must equal 1");
  require(alpha_sq >= beta_sq,
          "medium preparation: alpha_sq must be >= beta_sq");
  require(lambda >= 0.0 && lambda <= 1.0,
          "medium preparation: lambda must lie in [0, 1]");

  MediumPreparation prep;
  prep.alpha_sq = alpha_sq;
  prep.beta_sq = beta_sq;
  prep.lambda = lambda;
  prep.phi = phi;

  // Larger eigenvalue of the ground block, written without cancellation so
  // that lambda = 0 gives alpha_sq and lambda = 1 gives 1 exactly.
  const double product = alpha_sq * beta_sq;
  const double split = alpha_sq - beta_sq;
  const double coupling = lambda * lambda * product;
  const double root = std::sqrt(split * split + 4.0 * coupling);
  if (lambda == 1.0) {
    prep.zeta = 1.0;
  } else if (root + split > 0.0) {
    prep.zeta = alpha_sq + 2.0 * coupling / (root + split);
  } else {
    prep.zeta = alpha_sq;
  }

  const double gap = prep.zeta - beta_sq;
  const double coherence = lambda * std::sqrt(product);
  const double norm = std::hypot(gap, coherence);
  if (norm > 0.0) {
    prep.cos_theta = gap / norm;
    prep.sin_theta = -coherence / norm;
  } else {
    // alpha_sq == beta_sq == 1/2 with lambda == 0: any rotation diagonalizes
    // the (already diagonal) matrix; keep the identity.
    prep.cos_theta = 1.0;
    prep.sin_theta = 0.0;
  }
  return prep;
}

DensityMatrix initial_density_matrix(const MediumPreparation& prep) {
  DensityMatrix rho = DensityMatrix::Zero();
  const Complex coherence =
      prep.lambda * prep.alpha() * prep.beta() * std::polar(1.0, prep.phi);
  rho(0, 0) = prep.alpha_sq;
  rho(1, 1) = prep.beta_sq;
  rho(0, 1) = coherence;
  rho(1, 0) = std::conj(coherence);
  return rho;
}

DensityMatrix rotation_matrix(const MediumPreparation& prep) {
  const Complex phase = std::polar(1.0, prep.phi);
  DensityMatrix s = DensityMatrix::Zero();
  s(0, 0) = prep.cos_theta;
  s(0, 1) = prep.sin_theta * phase;
  s(1, 0) = -prep.sin_theta * std::conj(phase);
  s(1, 1) = prep.cos_theta;
  s(2, 2) = 1.0;
  return s;
}

DetuningEnsemble make_detuning_ensemble(double t2_star, int n_nodes,
                                        QuadratureRule rule,
                                        double half_width) {
  require(std::isfinite(t2_star) && t2_star > 0.0,
          "detuning ensemble: t2_star must be positive");
  require(n_nodes >= 1, "detuning ensemble: node count must be positive");
  require(n_nodes % 2 == 1,
          "detuning ensemble: node count must be odd so that a line-center "
          "node exists");

  DetuningEnsemble ensemble;
  ensemble.t2_star = t2_star;
  ensemble.rule = rule;
  const auto n = static_cast<std::size_t>(n_nodes);
  ensemble.nodes.resize(n);
  ensemble.line_center_index = n / 2;

  if (n == 1) {
    ensemble.nodes[0] = {0.0, 1.0};
    return ensemble;
  }

  // Work in the standardized variable x = t2_star * delta, x ~ N(0, 1).
  std::vector<double> x(n);
  std::vector<double> w(n);
  if (rule == QuadratureRule::gauss_hermite) {
    // Golub-Welsch for the probabilists' Hermite weight exp(-x^2 / 2):
    // the Jacobi matrix has zero diagonal and off-diagonal sqrt(k).
    Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXd off(static_cast<Eigen::Index>(n - 1));
    for (Eigen::Index k = 0; k < off.size(); ++k) {
      off(k) = std::sqrt(static_cast<double>(k + 1));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diagonal, off, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("detuning ensemble: Golub-Welsch eigensolve failed");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      x[k] = solver.eigenvalues()(kk);
      const double v0 = solver.eigenvectors()(0, kk);
      w[k] = v0 * v0;
    }
  } else {
    require(std::isfinite(half_width) && half_width > 0.0,
            "detuning ensemble: uniform half width must be positive");
    const auto m = static_cast<double>(n / 2);
    const double spacing = half_width / m;
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = (static_cast<double>(k) - m) * spacing;
      w[k] = std::exp(-0.5 * x[k] * x[k]);
    }
  }

  // Enforce exact mirror symmetry and an exact zero node.
  for (std::size_t k = 0; k < n / 2; ++k) {
    const std::size_t mirror = n - 1 - k;
    const double xs = 0.5 * (x[mirror] - x[k]);
    const double ws = 0.5 * (w[mirror] + w[k]);
    x[k] = -xs;
    x[mirror] = xs;
    w[k] = ws;
    w[mirror] = ws;
  }
  x[n / 2] = 0.0;

  double total = 0.0;
  for (std::size_t k = 0; k < n / 2; ++k) {
    total += 2.0 * w[k];
  }
  total += w[n / 2];

  for (std::size_t k = 0; k < n; ++k) {
    ensemble.nodes[k] = {x[k] / t2_star, w[k] / total};
  }
  return ensemble;
}

double kappa(double mu, double tau, const DetuningEnsemble& ensemble) {
  require(tau > 0.0, "kappa: tau must be positive");
  double sum = 0.0;
  for (const auto& node : ensemble.nodes) {
    const double dt = node.delta * tau;
    sum += node.weight / (1.0 + dt * dt);
  }
  return 0.5 * mu * tau * sum;
}

double beer_coefficient(double mu, double t2_star) {
  return std::sqrt(kPi / 2.0) * t2_star * mu;
}

MediumParams make_medium_params(double mu, double tau,
                                const DetuningEnsemble& ensemble) {
  MediumParams params;
  params.mu = mu;
  params.t2_star = ensemble.t2_star;
  params.alpha_d = beer_coefficient(mu, ensemble.t2_star);
  params.kappa = kappa(mu, tau, ensemble);
  return params;
}

RealSeries Grid::times() const {
  RealSeries out(n_t);
  for (std::size_t i = 0; i < n_t; ++i) {
    out[i] = t(i);
  }
  return out;
}

void Grid::validate() const {
  require(std::isfinite(t_min) && std::isfinite(t_max) && t_max > t_min,
          "grid: retarded-time window must satisfy t_min < t_max");
  require(std::isfinite(z_min) && std::isfinite(z_max) && z_max > z_min,
          "grid: propagation window must satisfy z_min < z_max");
  require(n_t >= 2, "grid: n_t must be at least 2");
  require(n_z >= 2, "grid: n_z must be at least 2");
}

}  // namespace mixonium
