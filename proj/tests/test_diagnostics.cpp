#include <doctest.h>

#include <cmath>

#include "mixonium/diagnostics.hpp"
#include "mixonium/dressed.hpp"

using namespace mixonium;
using namespace mixonium::diagnostics;

namespace {

RealSeries sample(double t0, double dt, std::size_t n, auto f) {
  RealSeries out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = f(t0 + dt * static_cast<double>(i));
  }
  return out;
}

ComplexSeries to_complex(const RealSeries& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("integration rules") {
  // Simpson is exact for cubics, with even and odd interval counts.
  for (std::size_t n : {2u, 3u, 4u, 11u, 12u, 101u}) {
    const double dt = 2.0 / static_cast<double>(n - 1);
    const auto v = sample(-1.0, dt, n, [](double t) { return t * t * t + 3.0 * t * t - t + 2.0; });
    const double exact = 2.0 + 4.0;
    if (n == 2) {
      CHECK(integrate(v, dt) == doctest::Approx(0.5 * dt * (v[0] + v[1])));
    } else {
      CHECK(integrate(v, dt) == doctest::Approx(exact).epsilon(1e-13));
    }
  }
  CHECK(integrate(RealSeries{}, 0.1) == 0.0);
  const auto g = sample(-20.0, 0.05, 801, [](double t) { return std::exp(-t * t / 2.0); });
  CHECK(integrate(g, 0.05) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("pulse areas") {
  const double dt = 0.01;
  const auto s = sample(-30.0, dt, 6001, [](double t) { return 2.0 / std::cosh(t); });
  const auto a = to_complex(s);
  CHECK(pulse_area(a, dt) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
  ComplexSeries b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    b[i] = 0.75 * a[i];
  }
  CHECK(total_area(a, b, dt) == doctest::Approx(2.5 * kPi).epsilon(1e-10));
  ComplexSeries twisted = a;
  twisted[3000] = Complex(2.0, 0.1);
  CHECK_THROWS_AS(pulse_area(twisted, dt), std::invalid_argument);
  FieldSnapshot snap{1.5, a, b};
  const auto rec = area_record(snap, dt);
  CHECK(rec.z == 1.5);
  CHECK(rec.a_b == doctest::Approx(1.5 * kPi).epsilon(1e-10));
  CHECK(rec.a_total == doctest::Approx(2.5 * kPi).epsilon(1e-10));
}

TEST_CASE("matching metric") {
  const double dt = 0.02;
  const auto s = sample(-20.0, dt, 2001, [](double t) { return std::exp(-t * t / 4.0); });
  const auto a = to_complex(s);
  ComplexSeries b(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    b[i] = -0.5 * a[i];
  }
  CHECK(matching_metric(a, b, dt, 2.0) < 1e-12);
  // Shifted copy: metric is order one and scales with tau.
  const auto shifted = to_complex(sample(-20.0, dt, 2001, [](double t) {
    return std::exp(-(t - 2.0) * (t - 2.0) / 4.0);
  }));
  const double m1 = matching_metric(a, shifted, dt, 1.0);
  CHECK(m1 > 0.1);
  CHECK(matching_metric(a, shifted, dt, 2.0) == doctest::Approx(2.0 * m1));
  CHECK(matching_metric(a, shifted, dt, 1.0) == doctest::Approx(matching_metric(shifted, a, dt, 1.0)));
}

TEST_CASE("area theorem residual") {
  // A(Z) = 2 atan(exp(-alpha_d Z / 2) tan(A0 / 2)) solves the theorem exactly.
  const double alpha_d = 1.2;
  const double dz = 0.01;
  const auto areas = sample(0.0, dz, 301, [&](double z) {
    return 2.0 * std::atan(std::exp(-alpha_d * z / 2.0) * std::tan(0.4 * kPi));
  });
  const auto r = area_theorem_residual(areas, alpha_d, dz);
  REQUIRE(r.size() == areas.size());
  for (double v : r) {
    CHECK(v < 1e-4);
  }
  const auto wrong = area_theorem_residual(areas, 2.0 * alpha_d, dz);
  CHECK(wrong[150] > 0.05);
}

TEST_CASE("peaks") {
  const double dt = 0.1;
  const auto v = sample(-5.0, dt, 101, [](double t) { return 3.0 - (t - 0.537) * (t - 0.537); });
  CHECK(peak_time(v, -5.0, dt) == doctest::Approx(0.537).epsilon(1e-12));
  CHECK(peak_value(v) == doctest::Approx(3.0 - 0.037 * 0.037));
}

TEST_CASE("group velocity fit") {
  Trajectory traj;
  for (int k = 0; k < 11; ++k) {
    SnapshotObservables obs;
    obs.z = 0.5 * k;
    obs.peak_time_a = 1.0 + 3.0 * obs.z;
    obs.peak_time_b = 1.0 + 1.0 * obs.z;
    obs.peak_time_total = obs.z < 2.5 ? 2.0 * obs.z : 5.0 + 0.5 * (obs.z - 2.5);
    traj.observables.push_back(obs);
  }
  auto fit = group_velocity_fit(traj, Observable::a);
  CHECK(fit.slope == doctest::Approx(3.0));
  CHECK(fit.vg_ratio == doctest::Approx(0.25));
  CHECK(fit.samples == 11);
  CHECK_FALSE(fit.regime_straddling);
  fit = group_velocity_fit(traj, Observable::b, 1.0, 3.0);
  CHECK(fit.vg_ratio == doctest::Approx(0.5));
  CHECK(fit.samples == 5);
  CHECK(group_velocity_fit(traj, Observable::total).regime_straddling);
  CHECK_FALSE(group_velocity_fit(traj, Observable::total, 0.0, 2.0).regime_straddling);
  CHECK_THROWS_AS(group_velocity_fit(traj, Observable::a, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("Beer decay fit") {
  Trajectory traj;
  for (int k = 0; k < 9; ++k) {
    SnapshotObservables obs;
    obs.z = 0.25 * k;
    obs.area_total = 0.01 * kPi * std::exp(-0.6 * obs.z);
    obs.peak_omega_t = 0.02 * std::exp(-0.6 * obs.z);
    traj.observables.push_back(obs);
  }
  auto fit = beer_decay_fit(traj);
  CHECK(fit.alpha == doctest::Approx(1.2));
  CHECK(fit.beer_lengths == doctest::Approx(2.4));
  CHECK_FALSE(fit.insufficient_decay);
  traj.observables.resize(3);
  CHECK(beer_decay_fit(traj).insufficient_decay);
  traj.observables.front().area_total = 0.1 * kPi;
  CHECK_THROWS_AS(beer_decay_fit(traj), std::invalid_argument);
}

TEST_CASE("regime classification") {
  const auto prep = make_medium_preparation(0.8, 0.2, 0.8);
  const double zeta = prep.zeta;
  CHECK(regime_classify(1.0 - zeta, prep) == RegimeLabel::I);
  CHECK(regime_classify(0.5, prep) == RegimeLabel::II);
  CHECK(regime_classify(zeta, prep) == RegimeLabel::III);
  CHECK(regime_classify(zeta, prep, {0.1, 1.1}) == RegimeLabel::II);
  const auto even = make_medium_preparation(0.5, 0.5, 0.0);
  CHECK(regime_classify(0.5, even) == RegimeLabel::II);
  CHECK(to_string(RegimeLabel::III) == "III");

  // Snapshot overload reads the atom at the Omega_T peak.
  const auto pure = make_medium_preparation(0.8, 0.2, 1.0);
  FieldSnapshot snap;
  std::vector<DensityMatrix> atoms;
  for (int i = 0; i < 5; ++i) {
    const double w = i == 2 ? 1.0 : 0.1;
    snap.omega_a.push_back(w * pure.alpha());
    snap.omega_b.push_back(w * pure.beta());
    atoms.push_back(initial_density_matrix(pure));
  }
  Grid grid;
  grid.n_t = 5;
  CHECK(regime_classify(snap, pure, atoms, grid) == RegimeLabel::I);
  // Dark-aligned fields at the peak only.
  snap.omega_a[2] = -pure.beta();
  snap.omega_b[2] = pure.alpha();
  CHECK(regime_classify(snap, pure, atoms, grid) == RegimeLabel::III);
  atoms.pop_back();
  CHECK_THROWS_AS(regime_classify(snap, pure, atoms, grid), std::invalid_argument);
}

TEST_CASE("sech fit") {
  const double dt = 0.05;
  const auto v = sample(-30.0, dt, 1201, [](double t) { return 0.7 / std::cosh((t - 1.3) / 2.4); });
  const auto fit = fit_sech(v, -30.0, dt);
  CHECK(fit.amplitude == doctest::Approx(0.7).epsilon(1e-8));
  CHECK(fit.center == doctest::Approx(1.3).epsilon(1e-8));
  CHECK(fit.width == doctest::Approx(2.4).epsilon(1e-8));
  CHECK(fit.rms_relative < 1e-8);
  const auto g = sample(-30.0, dt, 1201, [](double t) { return std::exp(-t * t / 8.0); });
  CHECK(fit_sech(g, -30.0, dt).rms_relative > 1e-3);
}
