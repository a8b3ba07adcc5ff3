#include "mixonium/dressed.hpp"

#include <algorithm>
#include <cmath>

namespace mixonium::dressed {

namespace {

constexpr Complex kI{0.0, 1.0};

double derivative(std::span<const double> x, std::size_t i, double dt) {
  const std::size_t n = x.size();
  if (n < 3) {
    return n == 2 ? (x[1] - x[0]) / dt : 0.0;
  }
  if (i == 0) {
    return (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * dt);
  }
  if (i == n - 1) {
    return (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * dt);
  }
  return (x[i + 1] - x[i - 1]) / (2.0 * dt);
}

void check_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("dressed: field series lengths differ");
  }
}

void check_floor(double omega_t, double floor) {
  if (!(omega_t > floor)) {
    throw DegenerateField("dressed basis undefined: Omega_T at or below floor");
  }
}

}  // namespace

double total_rabi(Complex omega_a, Complex omega_b) {
  return std::sqrt(std::norm(omega_a) + std::norm(omega_b));
}

RealSeries total_rabi(std::span<const Complex> omega_a,
                      std::span<const Complex> omega_b) {
  check_same_length(omega_a.size(), omega_b.size());
  RealSeries out(omega_a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = total_rabi(omega_a[i], omega_b[i]);
  }
  return out;
}

ComplexSeries dark_rabi(std::span<const Complex> omega_a,
                        std::span<const Complex> omega_b, double dt) {
  check_same_length(omega_a.size(), omega_b.size());
  if (!(dt > 0.0)) {
    throw std::invalid_argument("dark_rabi: dt must be positive");
  }
  const RealSeries omega_t = total_rabi(omega_a, omega_b);
  const double peak =
      omega_t.empty() ? 0.0 : *std::max_element(omega_t.begin(), omega_t.end());

  const std::size_t n = omega_a.size();
  RealSeries a(n);
  RealSeries b(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(omega_a[i].imag()) > kRelativeFloor * peak ||
        std::abs(omega_b[i].imag()) > kRelativeFloor * peak) {
      throw std::invalid_argument(
          "dark_rabi: envelopes must be real (unchirped)");
    }
    a[i] = omega_a[i].real();
    b[i] = omega_b[i].real();
  }

  ComplexSeries out(n, Complex{});
  const double floor = kRelativeFloor * peak;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(omega_t[i] > floor)) {
      continue;
    }
    const double cross = a[i] * derivative(b, i, dt) - b[i] * derivative(a, i, dt);
    out[i] = 2.0 * kI * cross / (omega_t[i] * omega_t[i]);
  }
  return out;
}

Eigen::Vector3cd bright_vector(Complex omega_a, Complex omega_b) {
  const double omega_t = total_rabi(omega_a, omega_b);
  check_floor(omega_t, 0.0);
  return Eigen::Vector3cd(omega_a / omega_t, omega_b / omega_t, 0.0);
}

Eigen::Vector3cd dark_vector(Complex omega_a, Complex omega_b) {
  const double omega_t = total_rabi(omega_a, omega_b);
  check_floor(omega_t, 0.0);
  return Eigen::Vector3cd(std::conj(omega_b) / omega_t,
                          -std::conj(omega_a) / omega_t, 0.0);
}

DressedAmplitudes bright_dark_amplitudes(Complex c1, Complex c2,
                                         Complex omega_a, Complex omega_b,
                                         double floor) {
  DressedAmplitudes out;
  out.omega_t = total_rabi(omega_a, omega_b);
  check_floor(out.omega_t, floor);
  out.c_b = (std::conj(omega_a) * c1 + std::conj(omega_b) * c2) / out.omega_t;
  out.c_d = (omega_b * c1 - omega_a * c2) / out.omega_t;
  return out;
}

double dark_population(const DensityMatrix& rho, Complex omega_a,
                       Complex omega_b, double floor) {
  check_floor(total_rabi(omega_a, omega_b), floor);
  const Eigen::Vector3cd d = dark_vector(omega_a, omega_b);
  const double value = (d.adjoint() * rho * d)(0, 0).real();
  return std::clamp(value, 0.0, 1.0);
}

DarkPopulationSeries dark_population_series(std::span<const DensityMatrix> rho,
                                            std::span<const Complex> omega_a,
                                            std::span<const Complex> omega_b) {
  check_same_length(omega_a.size(), omega_b.size());
  check_same_length(rho.size(), omega_a.size());
  const RealSeries omega_t = total_rabi(omega_a, omega_b);
  const double peak =
      omega_t.empty() ? 0.0 : *std::max_element(omega_t.begin(), omega_t.end());
  const double floor = kRelativeFloor * peak;

  DarkPopulationSeries out;
  out.value.assign(rho.size(), 0.0);
  out.valid.assign(rho.size(), false);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (omega_t[i] > floor) {
      out.value[i] = dark_population(rho[i], omega_a[i], omega_b[i], floor);
      out.valid[i] = true;
    }
  }
  return out;
}

DensityMatrix dressed_hamiltonian(Complex omega_a, Complex omega_b,
                                  double delta) {
  DensityMatrix h = DensityMatrix::Zero();
  h(2, 2) = delta;
  const double omega_t = total_rabi(omega_a, omega_b);
  if (omega_t == 0.0) {
    return h;
  }
  const Eigen::Vector3cd bright = bright_vector(omega_a, omega_b);
  Eigen::Vector3cd excited(0.0, 0.0, 1.0);
  h -= 0.5 * omega_t *
       (bright * excited.adjoint() + excited * bright.adjoint());
  return h;
}

DensityMatrix bare_hamiltonian(Complex omega_a, Complex omega_b, double delta) {
  DensityMatrix h = DensityMatrix::Zero();
  h(2, 2) = delta;
  h(0, 2) = -0.5 * omega_a;
  h(1, 2) = -0.5 * omega_b;
  h(2, 0) = -0.5 * std::conj(omega_a);
  h(2, 1) = -0.5 * std::conj(omega_b);
  return h;
}

TwoLevelSeries two_level_reference(std::span<const double> omega_t,
                                   double delta, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("two_level_reference: dt must be positive");
  }
  const std::size_t n = omega_t.size();
  TwoLevelSeries out;
  out.c_b.resize(n);
  out.c3.resize(n);
  if (n == 0) {
    return out;
  }

  // c_B' = i (Omega_T / 2) c_3,  c_3' = i (Omega_T / 2) c_B - i delta c_3
  auto rhs = [delta](double w, Complex cb, Complex c3, Complex& dcb,
                     Complex& dc3) {
    dcb = kI * 0.5 * w * c3;
    dc3 = kI * 0.5 * w * cb - kI * delta * c3;
  };

  Complex cb{1.0, 0.0};
  Complex c3{};
  out.c_b[0] = cb;
  out.c3[0] = c3;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double w0 = omega_t[i];
    const double w1 = omega_t[i + 1];
    const double wh = 0.5 * (w0 + w1);
    Complex k1b, k1e, k2b, k2e, k3b, k3e, k4b, k4e;
    rhs(w0, cb, c3, k1b, k1e);
    rhs(wh, cb + 0.5 * dt * k1b, c3 + 0.5 * dt * k1e, k2b, k2e);
    rhs(wh, cb + 0.5 * dt * k2b, c3 + 0.5 * dt * k2e, k3b, k3e);
    rhs(w1, cb + dt * k3b, c3 + dt * k3e, k4b, k4e);
    cb += dt / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    c3 += dt / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
    out.c_b[i + 1] = cb;
    out.c3[i + 1] = c3;
  }
  return out;
}

}  // namespace mixonium::dressed
