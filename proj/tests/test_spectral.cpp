#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "helpers.hpp"
#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/spectral.hpp"

using namespace nonrecip;
using Big = boost::multiprecision::cpp_bin_float_50;

TEST_SUITE("spectral") {
  TEST_CASE("Planck mean energy") {
    CHECK(planck_theta(1e14, 0.0) == 0.0);
    const double T = 300.0;
    const double w_classical = 0.01 * kBoltzmann * T / kHbar;
    CHECK(planck_theta(w_classical, T) == doctest::Approx(kBoltzmann * T).epsilon(0.01));

    // 50-digit reference.
    const Big hbar("1.054571817e-34");
    const Big kb("1.380649e-23");
    for (double w : {1e11, 1e13, 1e14, 5e14, 3e15}) {
      const Big x = hbar * Big(w) / (kb * Big(T));
      const double ref = static_cast<double>(hbar * Big(w) / boost::multiprecision::expm1(x));
      INFO("w = ", w);
      CHECK(testing::rel_diff(planck_theta(w, T), ref) < 1e-14);
    }
  }

  TEST_CASE("thermal wavelength") {
    CHECK(thermal_wavelength(300.0) == doctest::Approx(7.634e-6).epsilon(1e-3));
    CHECK(thermal_wavelength(10.0) == doctest::Approx(30.0 * thermal_wavelength(300.0)).epsilon(1e-14));
    CHECK(std::isinf(thermal_wavelength(0.0)));
    CHECK(thermal_wavelength(1e30) < 1e-30);
  }

  TEST_CASE("integral of Theta w^2 matches the zeta(4) oracle") {
    // int_0^inf Theta w^2 dw = (kB T)^4 / hbar^3 * 6 zeta(4)
    const Big six_zeta4 = 6 * boost::math::zeta(Big(4));
    for (double T : {10.0, 300.0, 1200.0}) {
      QuadratureConfig cfg;
      cfg.rel_tol = 1e-10;
      const auto r = integrate_omega([T](double w) { return planck_theta(w, T) * w * w; }, T, cfg);
      const double kT = kBoltzmann * T;
      const double ref = static_cast<double>(six_zeta4) * kT * kT * kT * kT / (kHbar * kHbar * kHbar);
      INFO("T = ", T);
      CHECK(testing::rel_diff(r.value, ref) < 1e-6);
    }
  }

  TEST_CASE("halving the tolerance moves the result by less than the tolerance") {
    const double T = 300.0;
    auto f = [T](double w) { return planck_theta(w, T) * w * w; };
    for (double tol : {1e-4, 1e-6, 1e-8}) {
      QuadratureConfig a;
      a.rel_tol = tol;
      QuadratureConfig b = a;
      b.rel_tol = tol / 2;
      const double va = integrate_omega(f, T, a).value;
      const double vb = integrate_omega(f, T, b).value;
      CHECK(testing::rel_diff(va, vb) < tol);
    }
  }

  TEST_CASE("zero integrand and zero temperature") {
    QuadratureConfig cfg;
    CHECK(integrate_omega([](double) { return 0.0; }, 300.0, cfg).value == 0.0);
    CHECK(integrate_omega([](double w) { return w; }, 0.0, cfg).value == 0.0);
    CHECK(integrate_adaptive([](double) { return 0.0; }, 0.0, 1.0, cfg).value == 0.0);
  }

  TEST_CASE("adaptive quadrature is linear in the integrand") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    auto f = [](double x) { return std::sin(3.0 * x) * std::exp(-x); };
    auto g = [](double x) { return 1.0 / (1.0 + x * x); };
    const double a = integrate_adaptive(f, 0.0, 10.0, cfg).value;
    const double b = integrate_adaptive(g, 0.0, 10.0, cfg).value;
    const double c = integrate_adaptive([&](double x) { return 2.5 * f(x) - 0.75 * g(x); }, 0.0, 10.0, cfg).value;
    CHECK(std::abs(c - (2.5 * a - 0.75 * b)) < 1e-12);
    CHECK(b == doctest::Approx(std::atan(10.0)).epsilon(1e-12));
  }

  TEST_CASE("breakpoints and panel caps do not change the value") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    auto f = [](double x) { return std::cos(40.0 * x) * x; };
    const double exact = (std::cos(40.0) + 40.0 * std::sin(40.0) - 1.0) / 1600.0;
    const std::array<double, 3> bp{0.1, 0.5, 0.7};
    CHECK(integrate_adaptive(f, 0.0, 1.0, cfg).value == doctest::Approx(exact).epsilon(1e-10));
    CHECK(integrate_adaptive(f, 0.0, 1.0, cfg, bp, 0.05).value == doctest::Approx(exact).epsilon(1e-10));
  }

  TEST_CASE("exhaustion raises QuadratureError with the achieved error") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-14;
    cfg.max_subdivisions = 3;
    try {
      integrate_adaptive([](double x) { return std::sin(1.0 / x); }, 0.0, 1.0, cfg);
      FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
      CHECK(e.achieved() > e.requested());
    }
  }

  TEST_CASE("non-finite integrand is reported") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0, cfg),
                    QuadratureError);
  }

  TEST_CASE("evanescent integral matches its closed-form antiderivative") {
    // int_{k0}^inf k^3 exp(-2 kappa d) dk = 6 / (2d)^4 + k0^2 / (2d)^2
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-11;
    for (double d : {1e-8, 1e-7, 1e-6}) {
      for (double w : {1e12, 1e14, 1e15}) {
        const double k0 = w / kSpeedOfLight;
        auto evan = [&](double k, double kappa) { return k * k * k * std::exp(-2.0 * kappa * d); };
        const auto r = integrate_kperp([](double, double) { return 0.0; }, evan, w, d, cfg);
        const double a = 2.0 * d;
        const double ref = 6.0 / (a * a * a * a) + k0 * k0 / (a * a);
        INFO("d = ", d, " w = ", w);
        CHECK(testing::rel_diff(r.evanescent, ref) < 1e-8);
        CHECK(r.propagating == 0.0);
      }
    }
  }

  TEST_CASE("propagating integral over the light cone") {
    QuadratureConfig cfg;
    const double w = 3e14;
    const double k0 = w / kSpeedOfLight;
    const auto r =
        integrate_kperp([](double k, double) { return k; }, [](double, double) { return 0.0; }, w, 1e-6, cfg);
    CHECK(r.propagating == doctest::Approx(0.5 * k0 * k0).epsilon(1e-12));
  }

  TEST_CASE("evanescent part vanishes at large distance") {
    // Beyond 1/k0 only the light-line neighbourhood survives: k0^2 / (4 d^2).
    QuadratureConfig cfg;
    const double w = 1e14;
    const double k0 = w / kSpeedOfLight;
    auto at = [&](double d) {
      auto evan = [&](double k, double kappa) { return k * k * k * std::exp(-2.0 * kappa * d); };
      return integrate_kperp([](double, double) { return 0.0; }, evan, w, d, cfg).evanescent;
    };
    const double d = 1e3 / k0;
    CHECK(testing::rel_diff(at(d), k0 * k0 / (4.0 * d * d)) < 1e-5);
    CHECK(at(10.0 * d) < 0.011 * at(d));
  }

  TEST_CASE("integrands receive |kz| on both branches") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    const double w = 2e14;
    const double k0 = w / kSpeedOfLight;
    double worst = 0.0;
    auto probe = [&](double k, double kz) {
      worst = std::max(worst, std::abs(k * k + kz * kz - k0 * k0) / (k0 * k0));
      return 0.0;
    };
    auto probe_evan = [&](double k, double kappa) {
      worst = std::max(worst, std::abs(k * k - kappa * kappa - k0 * k0) / (k * k));
      return 0.0;
    };
    integrate_kperp(probe, probe_evan, w, 1e-7, cfg);
    CHECK(worst < 1e-14);
  }

  TEST_CASE("propagating window closes as the frequency vanishes") {
    QuadratureConfig cfg;
    auto prop = [](double k, double) { return 1.0 + k; };
    auto none = [](double, double) { return 0.0; };
    const double a = integrate_kperp(prop, none, 1e10, 1e-6, cfg).propagating;
    const double b = integrate_kperp(prop, none, 1e6, 1e-6, cfg).propagating;
    CHECK(b < 1e-3 * a);
    CHECK(integrate_kperp(prop, none, 0.0, 1e-6, cfg).propagating == 0.0);
    CHECK_THROWS_AS(integrate_kperp(prop, prop, 1e14, 0.0, cfg), DomainError);
  }

  TEST_CASE("grids") {
    const auto g = log_grid(1e12, 1e15, 4);
    CHECK(g.front() == 1e12);
    CHECK(g.back() == 1e15);
    CHECK(g[1] == doctest::Approx(1e13).epsilon(1e-12));
    const auto l = linear_grid(0.0, 10.0, 11);
    CHECK(l[3] == doctest::Approx(3.0));
    CHECK(l.back() == 10.0);
  }

  TEST_CASE("sampled spectral curve") {
    const std::vector<double> grid{1.0, 2.0, 4.0};
    const SpectralCurve c = sample_curve([](double w) { return w * w; }, grid, SpectralKind::force);
    CHECK(c.kind == SpectralKind::force);
    CHECK(c.density == std::vector<double>{1.0, 4.0, 16.0});
  }
}
