#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mixonium/analytic.hpp"
#include "support/oracles.hpp"

using namespace mixonium;
using namespace mixonium::analytic;

namespace {

Params make(double a2, double lambda, double kappa_tau = 1.0, int nodes = 41) {
  const auto ens = make_detuning_ensemble(1.0, nodes);
  return oracle::params_for(make_medium_preparation(a2, 1.0 - a2, lambda), ens,
                            3.0, kappa_tau);
}

double trapezoid_area(const std::function<double(double)>& f, double lo,
                      double hi, std::size_t n) {
  const double h = (hi - lo) / static_cast<double>(n);
  double sum = 0.5 * (f(lo) + f(hi));
  for (std::size_t i = 1; i < n; ++i) {
    sum += f(lo + h * static_cast<double>(i));
  }
  return sum * h;
}

}  // namespace

TEST_CASE("diagonal pulses are positive and bounded") {
  const Params p = make(0.8, 0.8);
  for (double kz : {-300.0, -8.0, 0.0, 3.0, 300.0}) {
    for (double t : {-2000.0, -5.0, 0.0, 4.0, 2000.0}) {
      const auto f = diagonal_pulses(p, kz / p.kappa, t);
      CHECK(std::isfinite(f.a.real()));
      CHECK(std::isfinite(f.b.real()));
      CHECK(f.a.real() >= 0.0);
      CHECK(f.b.real() >= 0.0);
      CHECK(f.a.real() <= 2.0 / p.tau + 1e-15);
      CHECK(f.b.real() <= 2.0 / p.tau + 1e-15);
      CHECK(f.a.imag() == 0.0);
      const auto rho = mixonium_density_matrix(p, 0.3, kz / p.kappa, t);
      CHECK(rho.allFinite());
    }
  }
}

TEST_CASE("closed forms satisfy the Bloch and Maxwell equations") {
  const auto ens = make_detuning_ensemble(1.0, 41);
  for (auto [lambda, a2] : {std::pair{1.0, 0.8}, {0.8, 0.8}, {0.2, 0.8}, {0.0, 0.5}}) {
    const Params p = oracle::params_for(
        make_medium_preparation(a2, 1.0 - a2, lambda), ens, 3.0, 1.0);
    const double h = p.tau / 200.0;
    const double r1 = oracle::pde_residual(p, ens, h);
    const double r2 = oracle::pde_residual(p, ens, h / 2.0);
    CAPTURE(lambda);
    CHECK(r1 < 1e-4);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("spectrum is preserved") {
  for (double lambda : {1.0, 0.8, 0.2, 0.0}) {
    const Params p = make(0.8, lambda);
    for (double delta : {0.0, 0.4, -1.7}) {
      for (double kz : {-5.0, 0.0, 1.5, 6.0}) {
        for (double t : {-6.0, 0.0, 3.0, 9.0}) {
          const DensityMatrix rho = mixonium_density_matrix(p, delta, kz / p.kappa, t);
          CHECK((rho - rho.adjoint()).norm() < 1e-14);
          Eigen::SelfAdjointEigenSolver<DensityMatrix> solver(rho);
          const auto ev = solver.eigenvalues();
          CHECK(std::abs(ev(0)) < 1e-10);
          CHECK(std::abs(ev(1) - (1.0 - p.prep.zeta)) < 1e-10);
          CHECK(std::abs(ev(2) - p.prep.zeta) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("mixonium solutions are rotations of diagonal solutions") {
  const Params p = make(0.8, 0.8);
  const DensityMatrix s = rotation_matrix(p.prep);
  for (double kz : {-4.0, 0.0, 4.0}) {
    for (double t : {-3.0, 1.0, 7.0}) {
      const double z = kz / p.kappa;
      const auto d = diagonal_pulses(p, z, t);
      const auto m = mixonium_pulses(p, z, t);
      CHECK(std::abs(m.a - (s(0, 0) * d.a + s(0, 1) * d.b)) < 1e-15);
      CHECK(std::abs(m.b - (s(1, 0) * d.a + s(1, 1) * d.b)) < 1e-15);
      const DensityMatrix rd = diagonal_density_matrix(p, 0.5, z, t);
      const DensityMatrix rm = mixonium_density_matrix(p, 0.5, z, t);
      CHECK((rm - s * rd * s.adjoint()).norm() < 1e-14);
    }
  }
  // Deep in the medium's past the atoms are still in their prepared state.
  const DensityMatrix early = mixonium_density_matrix(p, 0.5, 0.0, -200.0);
  CHECK((early - initial_density_matrix(p.prep)).norm() < 1e-12);
}

TEST_CASE("pure-state amplitudes reproduce the density matrix") {
  const Params p = make(0.8, 1.0);
  for (double delta : {0.0, 0.6}) {
    for (double kz : {-6.0, 0.0, 6.0}) {
      for (double t : {-4.0, 0.0, 5.0, 12.0}) {
        const auto c = pure_state_amplitudes(p, delta, kz / p.kappa, t);
        const Eigen::Vector3cd v(c[0], c[1], c[2]);
        CHECK(std::abs(v.norm() - 1.0) < 1e-13);
        const DensityMatrix rho = mixonium_density_matrix(p, delta, kz / p.kappa, t);
        CHECK((v * v.adjoint() - rho).norm() < 1e-13);
      }
    }
  }
  const auto before = pure_state_amplitudes(p, 0.0, 0.0, -300.0);
  // Prepared state up to a global phase.
  CHECK(std::abs(std::sqrt(0.8) * before[0] + std::sqrt(0.2) * before[1]) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(pure_state_amplitudes(make(0.8, 0.8), 0.0, 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("excited-state probability") {
  for (double lambda : {1.0, 0.8, 0.2}) {
    const Params p = make(0.8, lambda);
    for (double kz : {-8.0, -1.0, 0.0, 2.0, 8.0}) {
      for (double t : {-3.0, 0.0, 2.0, 20.0}) {
        const double z = kz / p.kappa;
        CHECK(std::abs(excited_state_probability(p, z, t) -
                       mixonium_density_matrix(p, 0.0, z, t)(2, 2).real()) < 1e-12);
      }
    }
    // Input and output limits at the pulse peak.
    const double zin = -12.0 / p.kappa;
    const double zout = 12.0 / p.kappa;
    CHECK(excited_state_probability(p, zin, asymptotic_peak_time(p, zin, Regime::input)) ==
          doctest::Approx(p.prep.zeta).epsilon(1e-6));
    CHECK(excited_state_probability(p, zout, asymptotic_peak_time(p, zout, Regime::output)) ==
          doctest::Approx(1.0 - p.prep.zeta).epsilon(1e-4));
  }
}

TEST_CASE("asymptotic forms approach the exact solution") {
  for (double lambda : {1.0, 0.8, 0.2}) {
    const Params p = make(0.8, lambda);
    const double gap = 2.0 * p.prep.zeta - 1.0;
    for (double depth : {4.0, 8.0}) {
      for (auto [sign, regime] : {std::pair{-1.0, Regime::input}, {1.0, Regime::output}}) {
        const double z = sign * depth / p.kappa;
        double worst = 0.0;
        for (int i = -400; i <= 400; ++i) {
          const double t = asymptotic_peak_time(p, z, regime) + 0.05 * i;
          const auto exact = mixonium_pulses(p, z, t);
          const auto approx = asymptotic_pulses(p, z, t, regime);
          worst = std::max({worst, std::abs(exact.a - approx.a),
                            std::abs(exact.b - approx.b)});
        }
        CAPTURE(lambda);
        CAPTURE(depth);
        CHECK(worst * p.tau / 2.0 < 2.0 * std::exp(-gap * depth));
      }
    }
  }
  const Params p = make(0.8, 0.8);
  CHECK(asymptotic_peak_time(p, -5.0, Regime::input) ==
        doctest::Approx(p.prep.zeta * p.kappa * p.tau * -5.0));
  CHECK(asymptotic_peak_time(p, 5.0, Regime::output) ==
        doctest::Approx((1.0 - p.prep.zeta) * p.kappa * p.tau * 5.0));
}

TEST_CASE("pulse areas") {
  for (double lambda : {1.0, 0.8, 0.2}) {
    const Params p = make(0.8, lambda);
    for (double kz : {-10.0, -1.0, 0.0, 0.5, 3.0, 10.0}) {
      const double z = kz / p.kappa;
      const Areas a = analytic_pulse_areas(p, z);
      const double center = p.prep.zeta * kz * p.tau;
      auto fa = [&](double t) { return mixonium_pulses(p, z, t).a.real(); };
      auto fb = [&](double t) { return mixonium_pulses(p, z, t).b.real(); };
      auto ft = [&](double t) {
        const auto f = mixonium_pulses(p, z, t);
        return std::hypot(f.a.real(), f.b.real());
      };
      const double lo = center - 150.0;
      const double hi = center + 150.0;
      CHECK(trapezoid_area(fa, lo, hi, 30000) == doctest::Approx(a.a).epsilon(1e-8));
      CHECK(trapezoid_area(fb, lo, hi, 30000) == doctest::Approx(a.b).epsilon(1e-8));
      CHECK(trapezoid_area(ft, lo, hi, 30000) == doctest::Approx(kTwoPi).epsilon(1e-8));
      CHECK(a.total == doctest::Approx(kTwoPi).epsilon(1e-14));
    }
  }
  const Params pure = make(0.8, 1.0);
  const Areas out = analytic_pulse_areas(pure, 40.0 / pure.kappa);
  CHECK(out.a / out.b == doctest::Approx(-0.5).epsilon(1e-10));
  const Areas in = analytic_pulse_areas(pure, -40.0 / pure.kappa);
  CHECK(in.a / in.b == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(inverse_area_function(pure, 1e6) >= 0.0);
  CHECK(std::isfinite(inverse_area_function(pure, -1e6)));

  Params phased = pure;
  phased.column_phase_1 = 0.3;
  CHECK_THROWS_AS(analytic_pulse_areas(phased, 0.0), std::invalid_argument);
}

TEST_CASE("column phases leave the total field and rho33 unchanged") {
  const Params p = make(0.8, 0.8);
  Params q = p;
  q.column_phase_1 = 0.7;
  q.column_phase_2 = -1.9;
  for (double kz : {-3.0, 0.0, 3.0}) {
    for (double t : {-4.0, 0.0, 6.0}) {
      const double z = kz / p.kappa;
      const auto f = mixonium_pulses(p, z, t);
      const auto g = mixonium_pulses(q, z, t);
      CHECK(std::hypot(std::abs(f.a), std::abs(f.b)) ==
            doctest::Approx(std::hypot(std::abs(g.a), std::abs(g.b))).epsilon(1e-13));
      CHECK(excited_state_probability(p, z, t) ==
            doctest::Approx(excited_state_probability(q, z, t)).epsilon(1e-13));
    }
  }
  // The prepared state is unaffected.
  CHECK((mixonium_density_matrix(q, 0.2, 0.0, -300.0) - initial_density_matrix(q.prep))
            .norm() < 1e-12);
}
