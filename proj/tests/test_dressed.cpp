#include <doctest.h>

#include <cmath>

#include "mixonium/bloch.hpp"
#include "mixonium/dressed.hpp"
#include "support/oracles.hpp"

using namespace mixonium;
using namespace mixonium::dressed;

TEST_CASE("bright and dark vectors") {
  const Complex a{0.3, 0.1};
  const Complex b{-0.2, 0.4};
  const auto vb = bright_vector(a, b);
  const auto vd = dark_vector(a, b);
  CHECK(std::abs(vb.norm() - 1.0) < 1e-15);
  CHECK(std::abs(vd.norm() - 1.0) < 1e-15);
  CHECK(std::abs(vb.dot(vd)) < 1e-15);
  CHECK(vd(2) == Complex{});
  // The dark state is annihilated by the coupling.
  const DensityMatrix h = oracle::hamiltonian(a, b, 0.7);
  CHECK((h * vd).norm() < 1e-15);
  CHECK(total_rabi(a, b) == doctest::Approx(std::sqrt(0.3 * 0.3 + 0.1 * 0.1 + 0.2 * 0.2 + 0.4 * 0.4)));
  CHECK_THROWS_AS(bright_vector(Complex{}, Complex{}), DegenerateField);
}

TEST_CASE("bright/dark amplitudes") {
  const double alpha = std::sqrt(0.8);
  const double beta = std::sqrt(0.2);
  // Fields matched to the state: entirely bright.
  auto m = bright_dark_amplitudes(alpha, beta, 2.0 * alpha, 2.0 * beta);
  CHECK(std::abs(m.c_b - 1.0) < 1e-15);
  CHECK(std::abs(m.c_d) < 1e-15);
  CHECK(m.omega_t == doctest::Approx(2.0));
  // Ratio -beta/alpha: entirely dark.
  m = bright_dark_amplitudes(alpha, beta, -beta, alpha);
  CHECK(std::abs(m.c_b) < 1e-15);
  CHECK(std::abs(std::abs(m.c_d) - 1.0) < 1e-15);
  CHECK_THROWS_AS(bright_dark_amplitudes(alpha, beta, 1e-9, 0.0, 1e-6), DegenerateField);

  // Dark population of a pure state equals |c_D|^2.
  const Eigen::Vector3cd psi(Complex(0.6, 0.1), Complex(-0.3, 0.5), Complex(0.2, -0.1));
  const Eigen::Vector3cd v = psi / psi.norm();
  const DensityMatrix rho = v * v.adjoint();
  const Complex a{0.4, -0.2};
  const Complex b{0.1, 0.3};
  const auto amps = bright_dark_amplitudes(v(0), v(1), a, b);
  CHECK(dark_population(rho, a, b) == doctest::Approx(std::norm(amps.c_d)).epsilon(1e-14));
  CHECK(std::norm(amps.c_b) + std::norm(amps.c_d) ==
        doctest::Approx(std::norm(v(0)) + std::norm(v(1))).epsilon(1e-14));
}

TEST_CASE("dark population is bounded by the largest ground eigenvalue") {
  const auto prep = make_medium_preparation(0.8, 0.2, 0.8);
  const DensityMatrix rho = initial_density_matrix(prep);
  double best = 0.0;
  for (int k = 0; k < 720; ++k) {
    const double chi = kPi * k / 720.0;
    const double d = dark_population(rho, std::cos(chi), std::sin(chi));
    CHECK(d <= prep.zeta + 1e-14);
    best = std::max(best, d);
  }
  CHECK(best == doctest::Approx(prep.zeta).epsilon(1e-4));
}

TEST_CASE("dark population series flags the floor") {
  std::vector<DensityMatrix> rho(3, initial_density_matrix(make_medium_preparation(0.8, 0.2, 1.0)));
  ComplexSeries a{1.0, 0.0, 0.5};
  ComplexSeries b{0.0, 0.0, 0.5};
  const auto series = dark_population_series(rho, a, b);
  CHECK(series.valid == std::vector<bool>{true, false, true});
  CHECK(series.value[0] == doctest::Approx(0.2));
  CHECK(series.value[1] == 0.0);
}

TEST_CASE("dark Rabi frequency") {
  const double dt = 0.01;
  ComplexSeries a;
  ComplexSeries b;
  for (int i = 0; i < 2001; ++i) {
    const double t = -10.0 + dt * i;
    a.push_back(2.0 / std::cosh(t));
    b.push_back(1.0 / std::cosh(t));
  }
  for (const auto& v : dark_rabi(a, b, dt)) {
    CHECK(std::abs(v) < 1e-12);
  }
  // Mismatched widths give the mixing-angle rate 2i chi'.
  ComplexSeries c;
  for (int i = 0; i < 2001; ++i) {
    const double t = -10.0 + dt * i;
    c.push_back(1.0 / std::cosh(0.5 * t));
  }
  const auto od = dark_rabi(a, c, dt);
  const std::size_t i = 1300;
  const double t = -10.0 + dt * static_cast<double>(i);
  const double chi_rate = [&] {
    auto chi = [](double s) { return std::atan2(1.0 / std::cosh(0.5 * s), 2.0 / std::cosh(s)); };
    return (chi(t + 1e-5) - chi(t - 1e-5)) / 2e-5;
  }();
  CHECK(od[i].real() == doctest::Approx(0.0));
  CHECK(od[i].imag() == doctest::Approx(2.0 * chi_rate).epsilon(1e-4));
  ComplexSeries complex_field(a.size(), Complex{0.0, 1.0});
  CHECK_THROWS_AS(dark_rabi(complex_field, b, dt), std::invalid_argument);
}

TEST_CASE("dressed and bare Hamiltonians coincide") {
  for (auto [a, b] : {std::pair{Complex(0.3, 0.0), Complex(0.2, 0.0)},
                      {Complex(0.1, -0.4), Complex(-0.6, 0.2)}}) {
    const DensityMatrix hd = dressed_hamiltonian(a, b, 0.35);
    const DensityMatrix hb = bare_hamiltonian(a, b, 0.35);
    CHECK((hd - hb).norm() < 1e-15);
    CHECK((hb - oracle::hamiltonian(a, b, 0.35)).norm() < 1e-15);
  }
}

TEST_CASE("two-level reference") {
  const double tau = 3.0;
  const double dt = tau / 400.0;
  RealSeries omega;
  for (int i = 0; i <= 16000; ++i) {
    const double t = -60.0 + dt * i;
    omega.push_back(2.0 / tau / std::cosh(t / tau));
  }
  // Resonant 2 pi pulse: full inversion at the peak and return.
  const auto s = two_level_reference(omega, 0.0, dt);
  CHECK(std::norm(s.c3[8000]) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::norm(s.c3.back()) < 1e-10);
  for (std::size_t i = 0; i < s.c3.size(); i += 1000) {
    CHECK(std::norm(s.c_b[i]) + std::norm(s.c3[i]) == doctest::Approx(1.0).epsilon(1e-10));
  }
  // Detuned sech pi pulse: Rosen-Zener transition probability.
  RealSeries half(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    half[i] = 0.5 * omega[i];
  }
  const double delta = 0.4;
  const auto d = two_level_reference(half, delta, dt);
  const double expected = std::pow(1.0 / std::cosh(kPi * delta * tau / 2.0), 2);
  CHECK(std::norm(d.c3.back()) == doctest::Approx(expected).epsilon(1e-6));
}
