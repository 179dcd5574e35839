#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "nonrecip/tensor.hpp"

namespace nonrecip {

/// Entries of the gyrotropic permittivity
///   [[eps_p, 0, 0], [0, eps_d, eps_s - i eps_f], [0, eps_s + i eps_f, eps_d]]
/// with the field (or optical-axis plane normal) along x.
struct PermittivityEntries {
  Complex eps_p = 1.0;
  Complex eps_d = 1.0;
  Complex eps_s = 0.0;
  Complex eps_f = 0.0;
};

/// Polarizability entries in m^3, same layout as PermittivityEntries.
struct PolarizabilityEntries {
  Complex alpha_p = 0.0;
  Complex alpha_d = 0.0;
  Complex alpha_s = 0.0;
  Complex alpha_f = 0.0;
  double radius = 0.0;  // m
};

// n-doped InSb.
inline constexpr double kInSbEpsInf = 15.7;
inline constexpr double kInSbOmegaP = 7.4e14;    // rad/s
inline constexpr double kInSbOmegaTau = 6.3e12;  // rad/s
// Cyclotron frequency per tesla. The tenfold alternative is needed for the
// field dependence of two-particle emission (vacuum suppression ~1.5 at 10 T,
// perpendicular minimum near 2.3 T); the default gives the plate force its
// gyrotropic/surface-mode overlap at 10 T.
inline constexpr double kInSbOmegaBPerTesla = 2.2e12;        // rad/(s T)
inline constexpr double kInSbOmegaBPerTeslaStrong = 2.2e13;  // rad/(s T)

/// Drude metal in a static field along +x (magneto-optical).
struct DrudeMagnetoModel {
  double eps_inf = kInSbEpsInf;
  double omega_p = kInSbOmegaP;
  double omega_tau = kInSbOmegaTau;
  double omega_B_per_tesla = kInSbOmegaBPerTesla;
  double B = 0.0;  // tesla, signed

  static DrudeMagnetoModel insb(double B, double omega_B_per_tesla = kInSbOmegaBPerTesla) {
    return DrudeMagnetoModel{.omega_B_per_tesla = omega_B_per_tesla, .B = B};
  }
  double omega_B() const { return omega_B_per_tesla * B; }
};

/// Frequency-independent tensor; used for anisotropic reciprocal particles.
struct ConstantTensorModel {
  PermittivityEntries eps;
};

/// Polarizability given directly as a Lorentz line
///   alpha_d = R^3 A w0^2 / (w0^2 - w^2 - i g w),
///   alpha_f = eta alpha_d, alpha_p = p_weight alpha_d, alpha_s = 0.
/// Passive iff |eta| <= 1 and p_weight >= 0. Used to saturate passivity.
struct SyntheticModel {
  double strength = 1.0;
  double omega0 = 1e14;
  double gamma = 1e12;
  double eta = 1.0;
  double p_weight = 0.0;
};

/// Im alpha_f = alpha0 delta(omega - omega0). Only meaningful for forces.
struct DeltaToyModel {
  double alpha0 = 0.0;  // m^3 rad/s
  double omega0 = 0.0;  // rad/s
};

using ParticleMaterial = std::variant<DrudeMagnetoModel, ConstantTensorModel, SyntheticModel, DeltaToyModel>;

/// Isotropic Lorentz oscillator plate, 1 + C1 w1^2 / (w1^2 - w^2 - i g1 w).
struct LorentzPlateModel {
  double C1 = 2.0;
  double omega_1 = 1.15e14;  // rad/s
  double gamma_1 = 7e10;     // rad/s
};

struct PerfectConductor {};

/// Frequency-independent plate permittivity.
struct ConstantPlateModel {
  Complex eps = 1.0;
};

using PlateMaterial = std::variant<LorentzPlateModel, PerfectConductor, ConstantPlateModel>;

PermittivityEntries eps_magneto(const DrudeMagnetoModel& model, double omega);
Complex eps_plate(const LorentzPlateModel& model, double omega);
/// Permittivity of a dielectric plate; throws DomainError for PerfectConductor.
Complex plate_permittivity(const PlateMaterial& plate, double omega);

/// Clausius-Mossotti for the gyrotropic tensor, times R^3. `omega` is only
/// used to label a ResonanceError.
PolarizabilityEntries eps_to_alpha(const PermittivityEntries& eps, double R, double omega = 0.0);

ComplexMatrix3 alpha_matrix(const PolarizabilityEntries& alpha);

/// Polarizability of a sphere of radius R at omega. Throws DomainError for
/// DeltaToyModel, which has no pointwise polarizability.
PolarizabilityEntries polarizability(const ParticleMaterial& material, double R, double omega);

/// Frequencies where the material response peaks; used as quadrature breakpoints.
std::vector<double> feature_frequencies(const ParticleMaterial& material);
std::vector<double> feature_frequencies(const PlateMaterial& material);

/// Returns a copy with the magnetic field replaced (no-op for field-free models).
ParticleMaterial with_field(const ParticleMaterial& material, double B);

struct PassivityReport {
  bool passive = true;
  std::array<double, 3> eigenvalues{};  // of the Hermitian part, ascending, m^3
  std::string diagnostics;
};

inline constexpr double kPassivityTolerance = -1e-18;  // m^3

PassivityReport passivity_check(const PolarizabilityEntries& alpha);

/// Square root with Im >= 0.
Complex sqrt_upper(Complex z);

/// TM (electric) Fresnel coefficient of a half space with permittivity eps1.
Complex fresnel_rN(double omega, double k_perp, Complex eps1);
/// 1 - |rN|^2, evaluated without cancellation.
double fresnel_rN_transmissivity(double omega, double k_perp, Complex eps1);
/// Same, parametrized by the vacuum normal wavenumber kz (real, or i kappa
/// beyond the light line). Accurate close to the light line, where kz cannot
/// be recovered from k_perp.
Complex fresnel_rN_kz(double omega, Complex kz, Complex eps1);
double fresnel_rN_transmissivity_kz(double omega, Complex kz, Complex eps1);

/// c / (omega Im sqrt(eps)); +inf for a lossless entry.
double skin_depth(double omega, Complex eps_entry);

/// Smallest skin depth over eps_p, eps_d and the circular eigenvalues eps_d +- eps_f.
double min_skin_depth(const DrudeMagnetoModel& model, double omega);

}  // namespace nonrecip
