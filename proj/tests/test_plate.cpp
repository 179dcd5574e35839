#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "helpers.hpp"
#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/plate.hpp"

using namespace nonrecip;
using testing::rel_diff;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

PlateScene near_scene(double d, double B = 10.0, double R = 2e-9) {
  PlateScene s;
  s.particle = DrudeMagnetoModel::insb(B);
  s.R = R;
  s.d = d;
  return s;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Big shape_big(const Big& x) {
  using boost::multiprecision::cos;
  using boost::multiprecision::sin;
  const Big s = sin(2 * x), c = cos(2 * x);
  return (-3 * s + 6 * x * c + 4 * x * x * s) / (x * x * x * x);
}

double shape_big_d(double x) { return static_cast<double>(shape_big(Big(x))); }

// Stationary point of |f| by bisection on a central-difference derivative.
template <class F>
double extremum(F f, double lo, double hi, double h) {
  const auto df = [&](double x) { return f(x + h) - f(x - h); };
  double flo = df(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = df(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
double zero(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("plate") {
  TEST_CASE("scene validation") {
    PlateScene s;
    CHECK_NOTHROW(validate(s));
    s.d = s.R;
    CHECK_THROWS_AS(validate(s), DomainError);
    s.d = 1e-7;
    s.T2 = -1.0;
    CHECK_THROWS_AS(validate(s), DomainError);
  }

  TEST_CASE("no field, no lateral force") {
    const QuadratureConfig cfg;
    const PlateScene s = near_scene(50e-9, 0.0);
    CHECK(self_force(s, 300.0, cfg) == 0.0);
    CHECK(interaction_force(s, 300.0, cfg).total() == 0.0);
    for (double w : {1e13, 1e14}) CHECK(self_force_density(s, 300.0, w, cfg) == 0.0);
  }

  TEST_CASE("self force approaches its near-field form") {
    const QuadratureConfig cfg;
    for (double d : {5e-9, 10e-9}) {
      const PlateScene s = near_scene(d);
      const double full = self_force(s, 300.0, cfg);
      const double nf = self_force_near_field(s, 300.0, cfg);
      INFO("d = ", d);
      CHECK(rel_diff(full, nf) < 0.01);
    }
  }

  TEST_CASE("near-field self force has the opposite sign of its spectral weight") {
    QuadratureConfig cfg;
    const PlateScene s = near_scene(10e-9);
    const double weight =
        integrate_omega(
            [&](double w) {
              const Complex e = plate_permittivity(s.plate, w);
              return planck_theta(w, 300.0) / w * ((e - 1.0) / (e + 1.0)).imag() *
                     polarizability(s.particle, s.R, w).alpha_f.imag();
            },
            300.0, cfg, feature_frequencies(s.plate))
            .value;
    const double f = self_force_near_field(s, 300.0, cfg);
    CHECK(weight * f < 0.0);
    CHECK(rel_diff(f, -3.0 / (4.0 * kPi * std::pow(s.d, 4)) * weight) < 1e-6);
  }

  TEST_CASE("self and interaction forces cancel at short distance") {
    const QuadratureConfig cfg;
    const PlateScene s = near_scene(10e-9);
    const double self = self_force(s, 300.0, cfg);
    const double inter = interaction_force(s, 300.0, cfg).total();
    CHECK(rel_diff(self, -inter) < 0.01);
    CHECK(rel_diff(total_force_near_field(s, cfg),
                   self_force_near_field(s, s.T2, cfg) - self_force_near_field(s, s.T1, cfg)) < 1e-14);
  }

  TEST_CASE("reciprocal anisotropic particle: propagating channel only, finite as d -> 0") {
    const QuadratureConfig cfg;
    ConstantTensorModel m;
    m.eps.eps_p = m.eps.eps_d = {4.0, 1.0};
    m.eps.eps_s = {0.5, 0.3};
    std::vector<double> values;
    for (double d : {5e-9, 50e-9, 500e-9}) {
      PlateScene s;
      s.particle = m;
      s.R = 2e-9;
      s.d = d;
      const InteractionForce f = interaction_force(s, 300.0, cfg);
      CHECK(f.evanescent == 0.0);
      CHECK(f.propagating != 0.0);
      CHECK(self_force(s, 300.0, cfg) == 0.0);
      values.push_back(f.propagating);
    }
    CHECK(rel_diff(values[0], values[1]) < 0.05);
    CHECK(std::abs(values[0]) < 2.0 * std::abs(values[2]));
  }

  TEST_CASE("equilibrium null") {
    const QuadratureConfig cfg;
    PlateScene s = near_scene(100e-9, 10.0, 50e-9);
    s.T1 = s.T2 = s.Tenv = 300.0;
    const ForceBreakdown f = total_force(s, cfg);
    CHECK(std::abs(f.total) <= 1e-6 * std::abs(self_force(s, 300.0, cfg)));
  }

  TEST_CASE("environment at plate temperature cancels the interaction force") {
    const QuadratureConfig cfg;
    PlateScene s = near_scene(100e-9, 10.0, 50e-9);
    s.Tenv = s.T1;
    const ForceBreakdown f = total_force(s, cfg);
    CHECK(rel_diff(f.total, self_force(s, s.T2, cfg) - self_force(s, s.T1, cfg)) < 1e-12);
  }

  TEST_CASE("d^-4 scaling of the near-field self force") {
    const QuadratureConfig cfg;
    std::vector<double> ds, fs;
    for (double d : log_grid(5e-9, 50e-9, 6)) {
      ds.push_back(d);
      fs.push_back(self_force(near_scene(d), 300.0, cfg));
    }
    CHECK(loglog_slope(ds, fs) == doctest::Approx(-4.0).epsilon(0.05 / 4.0));
  }

  TEST_CASE("forces scale as R^3") {
    const QuadratureConfig cfg;
    PlateScene a = near_scene(100e-9, 10.0, 10e-9);
    PlateScene b = a;
    b.R = 20e-9;
    CHECK(rel_diff(8.0 * self_force(a, 300.0, cfg), self_force(b, 300.0, cfg)) < 1e-6);
    CHECK(rel_diff(8.0 * interaction_force(a, 300.0, cfg).total(), interaction_force(b, 300.0, cfg).total()) < 1e-6);
  }

  TEST_CASE("spectra are sampled on request") {
    const QuadratureConfig cfg;
    const PlateScene s = near_scene(100e-9, 10.0, 50e-9);
    const auto grid = log_grid(1e13, 3e14, 7);
    const ForceBreakdown f = total_force(s, cfg, grid);
    CHECK(f.self_spectrum.density.size() == 7);
    CHECK(f.interaction_spectrum.omega_grid == grid);
    CHECK(f.self_spectrum.kind == SpectralKind::force);
    CHECK(f.self_spectrum.density[3] == self_force_density(s, s.T2, grid[3], cfg));
    CHECK(total_force(s, cfg).self_spectrum.density.empty());
  }

  TEST_CASE("mirror force is linear at small distance") {
    const QuadratureConfig cfg;
    const ParticleMaterial p = DrudeMagnetoModel::insb(10.0);
    const double lambda = thermal_wavelength(300.0);
    const double d1 = lambda / 2000.0, d2 = lambda / 1000.0;
    const double f1 = mirror_self_force(d1, p, 50e-9, 300.0, cfg);
    const double f2 = mirror_self_force(d2, p, 50e-9, 300.0, cfg);
    CHECK(loglog_slope({d1, d2}, {f1, f2}) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(rel_diff(f2, mirror_self_force_small_d(d2, p, 50e-9, 300.0, cfg)) < 1e-3);
  }

  TEST_CASE("mirror force far field") {
    QuadratureConfig cfg;
    const ParticleMaterial p = DrudeMagnetoModel::insb(10.0);
    const double lambda = thermal_wavelength(300.0);
    const double d = 100.0 * lambda;
    const double full = mirror_self_force(d, p, 50e-9, 300.0, cfg);
    const double far = mirror_self_force_far_field(d, p, 50e-9, 300.0, cfg);
    CHECK(rel_diff(full, far) < 0.01);

    // Isolated particle: the force dies off inside the 1/d^2 envelope.
    const double envelope_coefficient =
        integrate_omega(
            [&](double w) {
              return planck_theta(w, 300.0) * w * std::abs(polarizability(p, 50e-9, w).alpha_f.imag()) /
                     (kPi * kSpeedOfLight * kSpeedOfLight);
            },
            300.0, cfg, feature_frequencies(p))
            .value;
    for (double dd : {100.0 * lambda, 1000.0 * lambda, 1e4 * lambda}) {
      const double f = mirror_self_force(dd, p, 50e-9, 300.0, cfg);
      CHECK(std::abs(f) <= 1.01 * envelope_coefficient / (dd * dd));
    }
  }

  TEST_CASE("Fresnel plate approaches the mirror as |eps| grows") {
    const QuadratureConfig cfg;
    const ParticleMaterial p = DrudeMagnetoModel::insb(10.0);
    const double d = 1e-6;
    const double mirror = mirror_self_force(d, p, 50e-9, 300.0, cfg);
    PerfectConductor pc;
    PlateScene via_variant;
    via_variant.plate = pc;
    via_variant.particle = p;
    via_variant.d = d;
    CHECK(self_force(via_variant, 300.0, cfg) == mirror);
    CHECK(interaction_force(via_variant, 300.0, cfg).total() == 0.0);

    std::vector<double> gaps;
    for (double mag : {1e8, 1e10, 1e12}) {
      PlateScene s = via_variant;
      s.plate = ConstantPlateModel{Complex{mag, mag}};
      gaps.push_back(std::abs(self_force(s, 300.0, cfg) - mirror) / std::abs(mirror));
    }
    MESSAGE("relative gap at |eps| ~ 1e8: ", gaps[0], ", 1e10: ", gaps[1], ", 1e12: ", gaps[2]);
    // Leading correction is the surface impedance, ~ 1/sqrt(eps).
    CHECK(gaps[0] / gaps[1] == doctest::Approx(10.0).epsilon(0.05));
    CHECK(gaps[1] / gaps[2] == doctest::Approx(10.0).epsilon(0.05));
    CHECK(gaps[2] < 1e-3);
  }

  TEST_CASE("toy force shape") {
    CHECK(toy_force_shape(0.0) == 0.0);
    CHECK_THROWS_AS(toy_force_shape(-1.0), DomainError);
    CHECK(rel_diff(toy_force_shape(1e-3), -32.0 * 1e-3 / 15.0) < 1e-3);

    // Agreement with the 50-digit closed form, across the series switch.
    for (double x : {1e-3, 0.05, 0.4, 0.9, 0.999999, 1.0, 1.000001, 1.25, 3.0, 17.0, 100.0}) {
      const double ref = shape_big_d(x);
      INFO("x = ", x);
      CHECK(std::abs(toy_force_shape(x) - ref) <= 1e-13 * (std::abs(ref) + 1.0 / (1.0 + x * x)));
    }
  }

  TEST_CASE("toy force shape far-field envelope") {
    // max |f| over one period near x = 100 against 4 / x^2.
    double best = 0.0, at = 0.0;
    for (double x : linear_grid(100.0, 100.0 + kPi, 20001)) {
      const double v = std::abs(toy_force_shape(x));
      if (v > best) {
        best = v;
        at = x;
      }
    }
    CHECK(rel_diff(best, 4.0 / (at * at)) < 1e-3);
  }

  TEST_CASE("toy force shape extremum and zeros against the 50-digit oracle") {
    const double x_max = extremum([](double x) { return toy_force_shape(x); }, 0.8, 1.8, 1e-5);
    const double x_max_ref = extremum([](double x) { return shape_big_d(x); }, 0.8, 1.8, 1e-5);
    CHECK(x_max == doctest::Approx(1.25).epsilon(0.05 / 1.25));
    CHECK(std::abs(x_max - x_max_ref) < 1e-9);
    // Argmax of |f| on a dense grid over (0, 20].
    double best = 0.0, at = 0.0;
    for (double x : linear_grid(1e-3, 20.0, 200001)) {
      if (std::abs(toy_force_shape(x)) > best) {
        best = std::abs(toy_force_shape(x));
        at = x;
      }
    }
    CHECK(std::abs(at - x_max) < 2e-4);

    // First zero crossings.
    for (auto [lo, hi] : {std::pair{1.8, 2.6}, std::pair{3.2, 4.2}}) {
      const double z = zero([](double x) { return toy_force_shape(x); }, lo, hi);
      const double zr = zero([](double x) { return shape_big_d(x); }, lo, hi);
      CHECK(std::abs(z - zr) < 1e-9);
    }
  }

  TEST_CASE("toy force equals the mirror integral for a delta line") {
    const QuadratureConfig cfg;
    const DeltaToyModel toy{1e-10, 1.2e14};
    for (double d : {1e-7, 2e-6, 5e-5}) {
      CHECK(rel_diff(toy_force(toy.alpha0, toy.omega0, 300.0, d), mirror_self_force(d, toy, 0.0, 300.0, cfg)) < 1e-15);
    }
    CHECK(toy_force(1e-10, 1.2e14, 0.0, 1e-6) == 0.0);
  }

  TEST_CASE("near-field emission into the plate") {
    const QuadratureConfig cfg;
    PlateScene s;
    s.d = 100e-9;
    s.R = 10e-9;
    SyntheticModel m;
    m.omega0 = 1.5e14;
    m.gamma = 5e12;
    m.p_weight = 0.5;
    m.eta = 0.0;
    s.particle = m;
    const double base = plate_nf_emission(s, 300.0, cfg);
    CHECK(base > 0.0);
    SyntheticModel mf = m;
    mf.eta = 0.8;
    s.particle = mf;
    CHECK(plate_nf_emission(s, 300.0, cfg) == base);
    PlateScene half = s;
    half.d = 50e-9;
    CHECK(rel_diff(plate_nf_emission(half, 300.0, cfg), 8.0 * base) < 1e-12);
    PlateScene vac = s;
    vac.plate = ConstantPlateModel{1.0};
    CHECK(plate_nf_emission(vac, 300.0, cfg) == 0.0);
    PlateScene mirror = s;
    mirror.plate = PerfectConductor{};
    CHECK_THROWS_AS(plate_nf_emission(mirror, 300.0, cfg), DomainError);
  }

  TEST_CASE("gravity") {
    const double R = 50e-9;
    CHECK(gravity_force(R, 5780.0) == doctest::Approx(5780.0 * 4.0 / 3.0 * kPi * R * R * R * 9.81).epsilon(1e-15));
    CHECK(rel_diff(gravity_force(2 * R, 5780.0), 8.0 * gravity_force(R, 5780.0)) < 1e-15);
    CHECK(gravity_force(R, 0.0) == 0.0);
  }
}
