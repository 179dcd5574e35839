#include <doctest.h>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/materials.hpp"
#include "nonrecip/spectral.hpp"

using namespace nonrecip;

namespace {

Eigen::Matrix3cd eps_matrix(const PermittivityEntries& e) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 0) = e.eps_p;
  m(1, 1) = m(2, 2) = e.eps_d;
  m(1, 2) = e.eps_s - i * e.eps_f;
  m(2, 1) = e.eps_s + i * e.eps_f;
  return m;
}

Eigen::Matrix3cd to_eigen(const ComplexMatrix3& a) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a(i, j);
  return m;
}

}  // namespace

TEST_SUITE("materials") {
  TEST_CASE("Drude model without field is isotropic") {
    const DrudeMagnetoModel m = DrudeMagnetoModel::insb(0.0);
    for (double w : log_grid(1e12, 1e15, 50)) {
      const PermittivityEntries e = eps_magneto(m, w);
      CHECK(e.eps_f == Complex{});
      CHECK(e.eps_s == Complex{});
      CHECK(std::abs(e.eps_d - e.eps_p) <= 1e-14 * std::max(std::abs(e.eps_p), m.eps_inf));
    }
  }

  TEST_CASE("InSb defaults") {
    const DrudeMagnetoModel m = DrudeMagnetoModel::insb(10.0);
    CHECK(m.omega_p == 7.4e14);
    CHECK(m.omega_tau == 6.3e12);
    CHECK(m.eps_inf == 15.7);
    CHECK(m.omega_B() == doctest::Approx(2.2e13).epsilon(1e-15));
  }

  TEST_CASE("eps_f is odd in B") {
    for (double w : log_grid(1e12, 1e15, 40)) {
      const PermittivityEntries a = eps_magneto(DrudeMagnetoModel::insb(3.7), w);
      const PermittivityEntries b = eps_magneto(DrudeMagnetoModel::insb(-3.7), w);
      CHECK(a.eps_f == -b.eps_f);
      CHECK(a.eps_d == b.eps_d);
      CHECK(a.eps_p == b.eps_p);
    }
  }

  TEST_CASE("Drude entries agree with the inverted conductivity tensor") {
    // Oracle: eps = eps_inf I - (wp^2 / w) M^-1 with the damped-gyration
    // operator M = (w + i tau) I + i wB (e_y e_z^T - e_z e_y^T), inverted numerically.
    const DrudeMagnetoModel m = DrudeMagnetoModel::insb(7.0);
    for (double w : log_grid(1e12, 1e15, 30)) {
      const Complex i{0.0, 1.0};
      const double wB = m.omega_B();
      Eigen::Matrix3cd M = Eigen::Matrix3cd::Identity() * Complex(w, m.omega_tau);
      M(1, 2) += i * wB;
      M(2, 1) -= i * wB;
      const Eigen::Matrix3cd expected =
          m.eps_inf * Eigen::Matrix3cd::Identity() - M.inverse() * (m.omega_p * m.omega_p / w);
      const Eigen::Matrix3cd got = eps_matrix(eps_magneto(m, w));
      INFO("w = ", w);
      CHECK((got - expected).norm() <= 1e-12 * expected.norm());
    }
  }

  TEST_CASE("Lorentz plate") {
    const LorentzPlateModel p;
    CHECK(p.C1 == 2.0);
    CHECK(p.omega_1 == 1.15e14);
    CHECK(p.gamma_1 == 7e10);
    CHECK(std::abs(eps_plate(p, 1.0) - 3.0) < 1e-12);
    for (double w : log_grid(1e12, 1e16, 400)) CHECK(eps_plate(p, w).imag() > 0.0);
    CHECK_THROWS_AS(plate_permittivity(PerfectConductor{}, 1e14), DomainError);
  }

  TEST_CASE("isotropic Clausius-Mossotti") {
    PermittivityEntries e;
    e.eps_p = e.eps_d = {4.0, 1.5};
    const double R = 3e-8;
    const PolarizabilityEntries a = eps_to_alpha(e, R);
    const Complex expected = (e.eps_p - 1.0) / (e.eps_p + 2.0) * (R * R * R);
    CHECK(std::abs(a.alpha_p - expected) <= 1e-15 * std::abs(expected));
    CHECK(std::abs(a.alpha_d - expected) <= 1e-15 * std::abs(expected));
    CHECK(a.alpha_s == Complex{});
    CHECK(a.alpha_f == Complex{});
  }

  TEST_CASE("vacuum has no polarizability") {
    const PolarizabilityEntries a = eps_to_alpha(PermittivityEntries{}, 1e-8);
    CHECK(a.alpha_p == Complex{});
    CHECK(a.alpha_d == Complex{});
    CHECK(a.alpha_s == Complex{});
    CHECK(a.alpha_f == Complex{});
  }

  TEST_CASE("polarizability matches the 3x3 matrix inverse oracle") {
    const double R = 50e-9;
    const Eigen::Matrix3cd I = Eigen::Matrix3cd::Identity();
    auto check = [&](const PermittivityEntries& e) {
      const Eigen::Matrix3cd eps = eps_matrix(e);
      const Eigen::Matrix3cd expected = (eps - I) * (eps + 2.0 * I).inverse() * (R * R * R);
      const Eigen::Matrix3cd got = to_eigen(alpha_matrix(eps_to_alpha(e, R)));
      CHECK((got - expected).norm() <= 1e-13 * expected.norm());
    };
    SUBCASE("InSb at 1e14 rad/s and 10 T") { check(eps_magneto(DrudeMagnetoModel::insb(10.0), 1e14)); }
    SUBCASE("InSb across frequencies and fields") {
      for (double B : {0.0, 1.0, 10.0, -4.0})
        for (double w : log_grid(1e12, 1e15, 25)) check(eps_magneto(DrudeMagnetoModel::insb(B), w));
    }
    SUBCASE("general tensor with eps_s") {
      PermittivityEntries e;
      e.eps_p = {3.0, 0.2};
      e.eps_d = {5.0, 0.7};
      e.eps_s = {0.8, 0.1};
      e.eps_f = {-0.4, 0.3};
      check(e);
    }
  }

  TEST_CASE("Clausius-Mossotti resonance is reported") {
    PermittivityEntries e;
    e.eps_p = e.eps_d = -2.0;
    CHECK_THROWS_AS(eps_to_alpha(e, 1e-8, 1.23e14), ResonanceError);
  }

  TEST_CASE("alpha matrix layout") {
    const Complex i{0.0, 1.0};
    PolarizabilityEntries f;
    f.alpha_f = {2.0, 1.0};
    const ComplexMatrix3 mf = alpha_matrix(f);
    CHECK(mf(1, 2) == -i * f.alpha_f);
    CHECK(mf(2, 1) == i * f.alpha_f);
    CHECK(mf.transpose() == mf * Complex{-1.0, 0.0});

    PolarizabilityEntries s;
    s.alpha_s = {0.5, 0.25};
    const ComplexMatrix3 ms = alpha_matrix(s);
    CHECK(ms(1, 2) == s.alpha_s);
    CHECK(ms(2, 1) == s.alpha_s);
    CHECK(ms.transpose() == ms);
  }

  TEST_CASE("InSb Hermitian part is positive semidefinite") {
    for (double B : {0.0, 1.0, 10.0}) {
      const DrudeMagnetoModel m = DrudeMagnetoModel::insb(B);
      for (double w : log_grid(1e11, 1e16, 200)) {
        const PolarizabilityEntries a = polarizability(m, 50e-9, w);
        const Eigen::Matrix3cd h = to_eigen(hermitian_part(alpha_matrix(a)));
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
        const double scale = h.norm();
        CHECK(es.eigenvalues().minCoeff() >= -1e-12 * scale);
        const PassivityReport rep = passivity_check(a);
        CHECK(rep.passive);
        CHECK(std::abs(rep.eigenvalues[0] - es.eigenvalues()[0]) <= 1e-10 * scale);
        CHECK(std::abs(rep.eigenvalues[2] - es.eigenvalues()[2]) <= 1e-10 * scale);
      }
    }
  }

  TEST_CASE("passivity check") {
    PolarizabilityEntries bad;
    bad.alpha_d = {0.0, 1.0};
    bad.alpha_f = {0.0, 2.0};
    const PassivityReport r = passivity_check(bad);
    CHECK_FALSE(r.passive);
    CHECK_FALSE(r.diagnostics.empty());
    CHECK(passivity_check(PolarizabilityEntries{}).passive);
    const DrudeMagnetoModel m = DrudeMagnetoModel::insb(10.0);
    for (double w : log_grid(1e11, 1e16, 300)) CHECK(passivity_check(polarizability(m, 1e-8, w)).passive);
  }

  TEST_CASE("Fresnel coefficient") {
    const double w = 1e14;
    const double k0 = w / kSpeedOfLight;
    SUBCASE("vacuum half space does not reflect") {
      for (double k : {0.0, 0.3 * k0, 0.999 * k0, 1.5 * k0, 100.0 * k0}) CHECK(std::abs(fresnel_rN(w, k, 1.0)) < 1e-15);
    }
    SUBCASE("normal incidence on a real dielectric") {
      for (double e : {2.0, 4.0, 11.7}) {
        const double s = std::sqrt(e);
        CHECK(std::abs(fresnel_rN(w, 0.0, e) - (s - 1.0) / (s + 1.0)) < 1e-15);
      }
    }
    SUBCASE("perfect-conductor limit") {
      for (double k : {0.0, 0.5 * k0, 3.0 * k0, 50.0 * k0}) {
        const Complex r = fresnel_rN(w, k, Complex{1e16, 1e16});
        CHECK(std::abs(r - 1.0) < 1e-6);
      }
    }
    SUBCASE("quasistatic limit (eps - 1)/(eps + 1)") {
      const Complex e{-3.0, 0.4};
      const Complex r = fresnel_rN(w, 1e4 * k0, e);
      CHECK(std::abs(r - (e - 1.0) / (e + 1.0)) < 1e-6);
    }
    SUBCASE("stable form agrees with the direct ratio") {
      const Complex e = eps_plate(LorentzPlateModel{}, 1.5e14);
      for (double k : {0.1 * k0, 0.9 * k0, 2.0 * k0, 30.0 * k0}) {
        const Complex kz = sqrt_upper(Complex(k0 * k0 - k * k, 0.0));
        const Complex kz1 = sqrt_upper(e * k0 * k0 - k * k);
        const Complex direct = (e * kz - kz1) / (e * kz + kz1);
        CHECK(std::abs(fresnel_rN(w, k, e) - direct) < 1e-14);
        CHECK(std::abs(fresnel_rN_transmissivity(w, k, e) - (1.0 - std::norm(direct))) < 1e-13);
      }
    }
    SUBCASE("passive plate: Im rN >= 0 on the evanescent branch") {
      const LorentzPlateModel p;
      for (double ww : log_grid(1e13, 1e15, 40))
        for (double q = 1.01; q < 1e4; q *= 1.7) CHECK(fresnel_rN(ww, q * ww / kSpeedOfLight, eps_plate(p, ww)).imag() >= 0.0);
    }
  }

  TEST_CASE("skin depth") {
    CHECK(std::isinf(skin_depth(1e14, Complex{4.0, 0.0})));
    const double expected = kSpeedOfLight / (1e14 * std::sqrt(1e6 / 2.0));
    CHECK(skin_depth(1e14, Complex{0.0, 1e6}) == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("InSb skin depth in the 300 K thermal band") {
    // Thermal band: hbar w / kB T in [0.01, 20].
    const double wT = kBoltzmann * 300.0 / kHbar;
    const auto band = log_grid(0.01 * wT, 20.0 * wT, 2000);
    double field_free = 1e300;
    for (double w : band) field_free = std::min(field_free, min_skin_depth(DrudeMagnetoModel::insb(0.0), w));
    CHECK(field_free > 400e-9);
    CHECK(field_free < 420e-9);

    // With a field the cyclotron resonance lowers the circular-eigenvalue depth
    // to about 250 nm at 10 T; still several radii for R <= 50 nm.
    double smallest = 1e300;
    for (double B : linear_grid(0.0, 10.0, 21))
      for (double w : band) smallest = std::min(smallest, min_skin_depth(DrudeMagnetoModel::insb(B), w));
    CHECK(smallest > 240e-9);
    CHECK(smallest < 400e-9);
  }

  TEST_CASE("with_field replaces B only for field-dependent models") {
    const ParticleMaterial m = with_field(DrudeMagnetoModel::insb(1.0), 5.0);
    CHECK(std::get<DrudeMagnetoModel>(m).B == 5.0);
    const ParticleMaterial s = with_field(SyntheticModel{}, 5.0);
    CHECK(std::holds_alternative<SyntheticModel>(s));
  }
}
