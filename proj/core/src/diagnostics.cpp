#include "mixonium/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "mixonium/dressed.hpp"

namespace mixonium::diagnostics {

namespace {

RealSeries real_part(std::span<const Complex> omega, const char* who) {
  double peak = 0.0;
  double imag = 0.0;
  for (const auto& v : omega) {
    peak = std::max(peak, std::abs(v));
    imag = std::max(imag, std::abs(v.imag()));
  }
  if (imag > kRealTolerance * peak) {
    throw std::invalid_argument(std::string(who) +
                                ": envelope must be real (signed quantities "
                                "are undefined for complex fields)");
  }
  RealSeries out(omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i) {
    out[i] = omega[i].real();
  }
  return out;
}

double derivative(std::span<const double> x, std::size_t i, double h) {
  const std::size_t n = x.size();
  if (n < 3) {
    return n == 2 ? (x[1] - x[0]) / h : 0.0;
  }
  if (i == 0) {
    return (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h);
  }
  if (i == n - 1) {
    return (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * h);
  }
  return (x[i + 1] - x[i - 1]) / (2.0 * h);
}

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace

double integrate(std::span<const double> values, double dt) {
  const std::size_t n = values.size();
  if (n < 2) {
    return 0.0;
  }
  if (n == 2) {
    return 0.5 * dt * (values[0] + values[1]);
  }
  const std::size_t intervals = n - 1;
  // Simpson needs an even number of intervals; peel three off for 3/8.
  const std::size_t simpson_end = intervals % 2 == 0 ? n - 1 : n - 4;
  double sum = 0.0;
  if (simpson_end > 0) {
    double s = values[0] + values[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) {
      s += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    }
    sum += s * dt / 3.0;
  }
  if (simpson_end != n - 1) {
    const std::size_t k = simpson_end;
    sum += 3.0 * dt / 8.0 *
           (values[k] + 3.0 * values[k + 1] + 3.0 * values[k + 2] +
            values[k + 3]);
  }
  return sum;
}

double pulse_area(std::span<const Complex> omega, double dt) {
  const RealSeries re = real_part(omega, "pulse_area");
  return integrate(re, dt);
}

double total_area(std::span<const Complex> omega_a,
                  std::span<const Complex> omega_b, double dt) {
  const RealSeries omega_t = dressed::total_rabi(omega_a, omega_b);
  return integrate(omega_t, dt);
}

AreaRecord area_record(const FieldSnapshot& snapshot, double dt) {
  AreaRecord record;
  record.z = snapshot.z;
  record.a_a = pulse_area(snapshot.omega_a, dt);
  record.a_b = pulse_area(snapshot.omega_b, dt);
  record.a_total = total_area(snapshot.omega_a, snapshot.omega_b, dt);
  return record;
}

double matching_metric(std::span<const Complex> omega_a,
                       std::span<const Complex> omega_b, double dt,
                       double tau) {
  if (omega_a.size() != omega_b.size()) {
    throw std::invalid_argument("matching_metric: series lengths differ");
  }
  const RealSeries a = real_part(omega_a, "matching_metric");
  const RealSeries b = real_part(omega_b, "matching_metric");
  RealSeries cross(a.size());
  RealSeries energy(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    cross[i] = std::abs(a[i] * derivative(b, i, dt) - b[i] * derivative(a, i, dt));
    energy[i] = a[i] * a[i] + b[i] * b[i];
  }
  const double norm = integrate(energy, dt);
  if (!(norm > 0.0)) {
    return 0.0;
  }
  return tau * integrate(cross, dt) / norm;
}

RealSeries area_theorem_residual(std::span<const double> areas, double alpha_d,
                                 double dz) {
  RealSeries out(areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i) {
    out[i] = std::abs(derivative(areas, i, dz) +
                      0.5 * alpha_d * std::sin(areas[i]));
  }
  return out;
}

double peak_value(std::span<const double> values) {
  if (values.empty()) {
    return 0.0;
  }
  return *std::max_element(values.begin(), values.end());
}

double peak_time(std::span<const double> values, double t0, double dt) {
  if (values.empty()) {
    return t0;
  }
  const auto i = static_cast<std::size_t>(
      std::max_element(values.begin(), values.end()) - values.begin());
  double offset = 0.0;
  if (i > 0 && i + 1 < values.size()) {
    const double ym = values[i - 1];
    const double y0 = values[i];
    const double yp = values[i + 1];
    const double curvature = ym - 2.0 * y0 + yp;
    if (curvature < 0.0) {
      offset = 0.5 * (ym - yp) / curvature;
    }
  }
  return t0 + (static_cast<double>(i) + offset) * dt;
}

VelocityFit group_velocity_fit(const Trajectory& trajectory, Observable which,
                               std::optional<double> z_lo,
                               std::optional<double> z_hi,
                               double straddle_tolerance) {
  RealSeries z;
  RealSeries t;
  for (const auto& obs : trajectory.observables) {
    if ((z_lo && obs.z < *z_lo) || (z_hi && obs.z > *z_hi)) {
      continue;
    }
    z.push_back(obs.z);
    switch (which) {
      case Observable::a:
        t.push_back(obs.peak_time_a);
        break;
      case Observable::b:
        t.push_back(obs.peak_time_b);
        break;
      case Observable::total:
        t.push_back(obs.peak_time_total);
        break;
    }
  }
  if (z.size() < 5) {
    throw std::invalid_argument(
        "group_velocity_fit: at least five snapshots are required");
  }
  const LineFit line = fit_line(z, t);
  VelocityFit fit;
  fit.slope = line.slope;
  fit.vg_ratio = 1.0 / (1.0 + line.slope);
  fit.rms_residual = line.rms;
  fit.samples = z.size();
  fit.regime_straddling = line.rms > straddle_tolerance;
  return fit;
}

BeerFit beer_decay_fit(const Trajectory& trajectory) {
  if (trajectory.observables.size() < 2) {
    throw std::invalid_argument("beer_decay_fit: at least two snapshots required");
  }
  const double input_area = std::abs(trajectory.observables.front().area_total);
  if (input_area > kWeakPulseArea) {
    throw std::invalid_argument(
        "beer_decay_fit: input pulse is not weak (total area > 0.05 pi)");
  }
  RealSeries z;
  RealSeries log_intensity;
  for (const auto& obs : trajectory.observables) {
    if (!(obs.peak_omega_t > 0.0)) {
      continue;
    }
    z.push_back(obs.z);
    log_intensity.push_back(2.0 * std::log(obs.peak_omega_t));
  }
  if (z.size() < 2) {
    throw std::invalid_argument("beer_decay_fit: no nonzero intensity samples");
  }
  const LineFit line = fit_line(z, log_intensity);
  BeerFit fit;
  fit.alpha = -line.slope;
  fit.beer_lengths = fit.alpha * (z.back() - z.front());
  fit.insufficient_decay = fit.beer_lengths < 1.0;
  return fit;
}

RegimeLabel regime_classify(double dark_population_peak,
                            const MediumPreparation& prep,
                            const RegimeThresholds& thresholds) {
  const double span = 2.0 * prep.zeta - 1.0;
  if (span <= 1e-12) {
    // zeta = 1/2: bright and dark populations cannot be exchanged.
    return RegimeLabel::II;
  }
  const double transferred = (dark_population_peak - (1.0 - prep.zeta)) / span;
  if (transferred < thresholds.lower) {
    return RegimeLabel::I;
  }
  if (transferred > thresholds.upper) {
    return RegimeLabel::III;
  }
  return RegimeLabel::II;
}

RegimeLabel regime_classify(const FieldSnapshot& snapshot,
                            const MediumPreparation& prep,
                            std::span<const DensityMatrix> line_center_atoms,
                            const Grid& grid,
                            const RegimeThresholds& thresholds) {
  (void)grid;
  if (line_center_atoms.size() != snapshot.omega_a.size()) {
    throw std::invalid_argument(
        "regime_classify: line-center atoms must cover the snapshot grid");
  }
  const RealSeries omega_t =
      dressed::total_rabi(snapshot.omega_a, snapshot.omega_b);
  const auto i = static_cast<std::size_t>(
      std::max_element(omega_t.begin(), omega_t.end()) - omega_t.begin());
  const double dark = dressed::dark_population(
      line_center_atoms[i], snapshot.omega_a[i], snapshot.omega_b[i]);
  return regime_classify(dark, prep, thresholds);
}

std::string to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::I:
      return "I";
    case RegimeLabel::II:
      return "II";
    case RegimeLabel::III:
      return "III";
  }
  return "?";
}

SechFit fit_sech(std::span<const double> values, double t0, double dt) {
  SechFit fit;
  if (values.size() < 3) {
    return fit;
  }
  fit.amplitude = peak_value(values);
  fit.center = peak_time(values, t0, dt);
  if (!(fit.amplitude > 0.0)) {
    return fit;
  }
  fit.width = std::max(integrate(values, dt) / (kPi * fit.amplitude), dt);

  auto residual_norm = [&](double amp, double center, double width) {
    double ss = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double x = (t0 + static_cast<double>(i) * dt - center) / width;
      const double r = amp / std::cosh(x) - values[i];
      ss += r * r;
    }
    return ss;
  };

  // Levenberg-Marquardt on (amplitude, center, width).
  double damping = 1e-3;
  double current = residual_norm(fit.amplitude, fit.center, fit.width);
  for (int iteration = 0; iteration < 100; ++iteration) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double x = (t0 + static_cast<double>(i) * dt - fit.center) / fit.width;
      const double s = 1.0 / std::cosh(x);
      const double th = std::tanh(x);
      const double r = fit.amplitude * s - values[i];
      const Eigen::Vector3d g(s, fit.amplitude * s * th / fit.width,
                              fit.amplitude * s * th * x / fit.width);
      jtj += g * g.transpose();
      jtr += g * r;
    }
    Eigen::Matrix3d lhs = jtj;
    lhs.diagonal() *= 1.0 + damping;
    const Eigen::Vector3d step = lhs.ldlt().solve(-jtr);
    const double amp = fit.amplitude + step(0);
    const double center = fit.center + step(1);
    const double width = fit.width + step(2);
    if (width > 0.0 && amp > 0.0) {
      const double trial = residual_norm(amp, center, width);
      if (trial < current) {
        const bool converged = current - trial <= 1e-14 * current;
        fit.amplitude = amp;
        fit.center = center;
        fit.width = width;
        current = trial;
        damping = std::max(damping / 10.0, 1e-12);
        if (converged) {
          break;
        }
        continue;
      }
    }
    damping *= 10.0;
    if (damping > 1e12) {
      break;
    }
  }
  fit.rms_relative =
      std::sqrt(current / static_cast<double>(values.size())) / fit.amplitude;
  return fit;
}

}  // namespace mixonium::diagnostics
