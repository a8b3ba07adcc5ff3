#include <doctest.h>

#include <cmath>
#include <limits>

#include "mixonium/bloch.hpp"
#include "support/oracles.hpp"

using namespace mixonium;

namespace {

DensityMatrix random_state(unsigned seed) {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  double x = 0.1 + 0.01 * seed;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      x = std::fmod(x * 9301.0 + 49297.0, 233280.0) / 233280.0;
      const double re = x - 0.5;
      x = std::fmod(x * 9301.0 + 49297.0, 233280.0) / 233280.0;
      m(i, j) = Complex(re, x - 0.5);
    }
  }
  DensityMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST_CASE("right-hand side is the von Neumann equation") {
  for (unsigned seed = 0; seed < 5; ++seed) {
    const DensityMatrix rho = random_state(seed);
    const Complex a{0.4, -0.3};
    const Complex b{-0.2, 0.7};
    const double delta = 0.9;
    const DensityMatrix expected = oracle::liouville(rho, a, b, delta);
    const DensityMatrix got =
        bloch_rhs(BlochState::from_matrix(rho), a, b, delta).to_matrix();
    CHECK((got - expected).norm() < 1e-15);
  }
  const DensityMatrix rho = random_state(7);
  CHECK((BlochState::from_matrix(rho).to_matrix() - rho).norm() < 1e-15);
  CHECK(BlochState::from_matrix(rho).purity() == doctest::Approx((rho * rho).trace().real()));
}

TEST_CASE("Rabi flopping and fourth-order convergence") {
  // Constant pump on |1>: rho33 = sin^2(Omega t / 2).
  const double omega = 0.8;
  const double t_end = 5.0;
  auto error = [&](int steps) {
    const double dt = t_end / steps;
    ComplexSeries a(steps + 1, omega);
    ComplexSeries b(steps + 1, 0.0);
    DensityMatrix rho0 = DensityMatrix::Zero();
    rho0(0, 0) = 1.0;
    const auto out = bloch_integrate(rho0, a, b, 0.0, dt);
    const double exact = std::pow(std::sin(omega * t_end / 2.0), 2);
    return std::abs(out.back()(2, 2).real() - exact);
  };
  const double e1 = error(50);
  const double e2 = error(100);
  CHECK(e1 < 1e-6);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("unitary invariants are conserved") {
  const double dt = 0.02;
  ComplexSeries a;
  ComplexSeries b;
  for (int i = 0; i < 1500; ++i) {
    const double t = -15.0 + dt * i;
    a.push_back(Complex(0.8 * std::exp(-t * t / 8.0), 0.1 * std::exp(-t * t / 4.0)));
    b.push_back(0.5 * std::exp(-(t - 2.0) * (t - 2.0) / 18.0));
  }
  const DensityMatrix rho0 = initial_density_matrix(make_medium_preparation(0.7, 0.3, 0.6));
  const auto out = bloch_integrate(rho0, a, b, 0.37, dt);
  const double purity0 = (rho0 * rho0).trace().real();
  for (const auto& rho : out) {
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    CHECK(std::abs((rho * rho).trace().real() - purity0) < 1e-9);
    CHECK((rho - rho.adjoint()).norm() < 1e-15);
  }
}

TEST_CASE("numerical aborts") {
  ComplexSeries a(10, 0.1);
  ComplexSeries b(10, 0.1);
  a[4] = std::numeric_limits<double>::quiet_NaN();
  DensityMatrix rho0 = DensityMatrix::Zero();
  rho0(0, 0) = 1.0;
  CHECK_THROWS_AS(bloch_integrate(rho0, a, b, 0.0, 0.1), NumericalAbort);
  // A step far beyond RK4 stability drifts the trace.
  ComplexSeries big(10, 400.0);
  CHECK_THROWS_AS(bloch_integrate(rho0, big, b, 0.0, 1.0), NumericalAbort);
}

TEST_CASE("ensemble polarization average") {
  const auto ens = make_detuning_ensemble(1.0, 5);
  std::vector<DensityMatrix> atoms(5, DensityMatrix::Zero());
  Complex expected{};
  for (std::size_t k = 0; k < 5; ++k) {
    atoms[k](0, 2) = Complex(0.1 * k, -0.05 * k);
    atoms[k](1, 2) = 0.2;
    expected += ens.nodes[k].weight * atoms[k](0, 2);
  }
  const auto p = polarization_average(atoms, ens);
  CHECK(std::abs(p.p13 - expected) < 1e-15);
  CHECK(std::abs(p.p23 - 0.2) < 1e-15);
  atoms.pop_back();
  CHECK_THROWS_AS(polarization_average(atoms, ens), std::invalid_argument);
}
