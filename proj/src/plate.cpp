#include "nonrecip/plate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"

namespace nonrecip {

namespace {

constexpr Complex kI{0.0, 1.0};

using AlphaDensity = std::function<double(double omega, const PolarizabilityEntries& alpha)>;

// Integral of a density that is linear in the polarizability. For the delta
// toy, Im alpha_f = alpha0 delta(omega - omega0) collapses the integral.
double band_integral(const ParticleMaterial& particle, double R, double T, const AlphaDensity& density,
                     const QuadratureConfig& cfg, std::vector<double> breakpoints, double width = 0.0) {
  if (T == 0.0) return 0.0;
  if (const auto* toy = std::get_if<DeltaToyModel>(&particle)) {
    PolarizabilityEntries a;
    a.alpha_f = Complex{0.0, toy->alpha0};
    a.radius = R;
    if (toy->omega0 <= 0.0) throw DomainError("delta toy requires omega0 > 0");
    return density(toy->omega0, a);
  }
  const std::vector<double> features = feature_frequencies(particle);
  breakpoints.insert(breakpoints.end(), features.begin(), features.end());
  return integrate_omega([&](double w) { return density(w, polarizability(particle, R, w)); }, T, cfg, breakpoints,
                         width)
      .value;
}

QuadratureConfig inner_config(const QuadratureConfig& cfg) {
  QuadratureConfig inner = cfg;
  inner.rel_tol = std::max(cfg.rel_tol * 1e-2, 1e-13);
  inner.abs_tol = 0.0;
  return inner;
}

// (1/2pi) int dk k^3 Im[rN e^{2 i kz d}] over both branches.
KPerpResult self_kernel(Complex eps1, double omega, double d, const QuadratureConfig& cfg) {
  const auto prop = [&](double k, double kz) {
    return k * k * k * (fresnel_rN_kz(omega, kz, eps1) * std::exp(2.0 * kI * kz * d)).imag();
  };
  const auto evan = [&](double k, double kappa) {
    return k * k * k * std::exp(-2.0 * kappa * d) * fresnel_rN_kz(omega, kI * kappa, eps1).imag();
  };
  KPerpResult r = integrate_kperp(prop, evan, omega, d, inner_config(cfg));
  r.propagating /= 2.0 * kPi;
  r.evanescent /= 2.0 * kPi;
  return r;
}

// Propagating (1/2pi) int dk k^3 (1 - |rN|^2)/2 and evanescent (1/2pi) int dk k^3 e^{-2 kappa d} Im rN.
KPerpResult interaction_kernel(Complex eps1, double omega, double d, const QuadratureConfig& cfg) {
  const auto prop = [&](double k, double kz) {
    return k * k * k * 0.5 * fresnel_rN_transmissivity_kz(omega, kz, eps1);
  };
  const auto evan = [&](double k, double kappa) {
    return k * k * k * std::exp(-2.0 * kappa * d) * fresnel_rN_kz(omega, kI * kappa, eps1).imag();
  };
  KPerpResult r = integrate_kperp(prop, evan, omega, d, inner_config(cfg));
  r.propagating /= 2.0 * kPi;
  r.evanescent /= 2.0 * kPi;
  return r;
}

double mirror_density(double omega, double d, double T, const PolarizabilityEntries& a) {
  const double c4 = std::pow(kSpeedOfLight, 4);
  return planck_theta(omega, T) * omega * omega * omega * a.alpha_f.imag() *
         toy_force_shape(omega * d / kSpeedOfLight) / (4.0 * kPi * c4);
}

double self_density_alpha(const PlateScene& s, double T, double omega, const PolarizabilityEntries& a,
                          const QuadratureConfig& cfg) {
  if (std::holds_alternative<PerfectConductor>(s.plate)) return mirror_density(omega, s.d, T, a);
  const double im_f = a.alpha_f.imag();
  if (im_f == 0.0) return 0.0;
  const double theta = planck_theta(omega, T);
  if (theta == 0.0) return 0.0;
  const KPerpResult k = self_kernel(plate_permittivity(s.plate, omega), omega, s.d, cfg);
  return -4.0 * theta / omega * k.total() * im_f;
}

InteractionForce interaction_density_alpha(const PlateScene& s, double T, double omega,
                                           const PolarizabilityEntries& a, const QuadratureConfig& cfg) {
  InteractionForce f;
  if (std::holds_alternative<PerfectConductor>(s.plate)) return f;
  const double theta = planck_theta(omega, T);
  if (theta == 0.0 || (a.alpha_f.imag() == 0.0 && a.alpha_s.imag() == 0.0)) return f;
  const KPerpResult k = interaction_kernel(plate_permittivity(s.plate, omega), omega, s.d, cfg);
  const double pre = -4.0 * theta / omega;
  f.evanescent = -pre * k.evanescent * a.alpha_f.imag();
  f.propagating = pre * k.propagating * a.alpha_s.imag();
  return f;
}

Complex surface_response(const PlateScene& s, double omega) {
  const Complex eps = plate_permittivity(s.plate, omega);
  return (eps - 1.0) / (eps + 1.0);
}

double nf_self_density_alpha(const PlateScene& s, double T, double omega, const PolarizabilityEntries& a) {
  return -3.0 / (4.0 * kPi * std::pow(s.d, 4)) * planck_theta(omega, T) / omega *
         surface_response(s, omega).imag() * a.alpha_f.imag();
}

double nf_emission_density_alpha(const PlateScene& s, double T, double omega, const PolarizabilityEntries& a) {
  return planck_theta(omega, T) / (4.0 * kPi * std::pow(s.d, 3)) * surface_response(s, omega).imag() *
         (a.alpha_p.imag() + 3.0 * a.alpha_d.imag());
}

std::vector<double> plate_breakpoints(const PlateScene& s) { return feature_frequencies(s.plate); }

void require_dielectric(const PlateScene& s, const char* what) {
  if (std::holds_alternative<PerfectConductor>(s.plate))
    throw DomainError(std::string(what) + " requires a dielectric plate");
}

PolarizabilityEntries pointwise_alpha(const PlateScene& s, double omega) {
  return polarizability(s.particle, s.R, omega);
}

// Half a period of sin(2 omega d / c).
double mirror_width(double d) { return kPi * kSpeedOfLight / (2.0 * d); }

}  // namespace

void validate(const PlateScene& s) {
  if (!(s.R >= 0.0)) throw DomainError("particle radius must be nonnegative");
  if (!(s.d > s.R)) throw DomainError("plate distance d must exceed the particle radius");
  if (s.T1 < 0.0 || s.T2 < 0.0 || s.Tenv < 0.0) throw DomainError("temperatures must be nonnegative");
}

double self_force_density(const PlateScene& s, double T, double omega, const QuadratureConfig& cfg) {
  return self_density_alpha(s, T, omega, pointwise_alpha(s, omega), cfg);
}

InteractionForce interaction_force_density(const PlateScene& s, double T, double omega, const QuadratureConfig& cfg) {
  return interaction_density_alpha(s, T, omega, pointwise_alpha(s, omega), cfg);
}

double self_force_near_field_density(const PlateScene& s, double T, double omega) {
  return nf_self_density_alpha(s, T, omega, pointwise_alpha(s, omega));
}

double plate_nf_emission_density(const PlateScene& s, double T, double omega) {
  return nf_emission_density_alpha(s, T, omega, pointwise_alpha(s, omega));
}

double self_force(const PlateScene& s, double T, const QuadratureConfig& cfg) {
  validate(s);
  if (std::holds_alternative<PerfectConductor>(s.plate)) return mirror_self_force(s.d, s.particle, s.R, T, cfg);
  return band_integral(
      s.particle, s.R, T, [&](double w, const PolarizabilityEntries& a) { return self_density_alpha(s, T, w, a, cfg); },
      cfg, plate_breakpoints(s));
}

InteractionForce interaction_force(const PlateScene& s, double T, const QuadratureConfig& cfg) {
  validate(s);
  InteractionForce f;
  if (std::holds_alternative<PerfectConductor>(s.plate)) return f;
  f.evanescent = band_integral(
      s.particle, s.R, T,
      [&](double w, const PolarizabilityEntries& a) {
        PolarizabilityEntries only_f;
        only_f.alpha_f = a.alpha_f;
        return interaction_density_alpha(s, T, w, only_f, cfg).evanescent;
      },
      cfg, plate_breakpoints(s));
  f.propagating = band_integral(
      s.particle, s.R, T,
      [&](double w, const PolarizabilityEntries& a) {
        PolarizabilityEntries only_s;
        only_s.alpha_s = a.alpha_s;
        return interaction_density_alpha(s, T, w, only_s, cfg).propagating;
      },
      cfg, plate_breakpoints(s));
  return f;
}

ForceBreakdown total_force(const PlateScene& s, const QuadratureConfig& cfg, std::span<const double> grid) {
  validate(s);
  ForceBreakdown f;
  f.self = self_force(s, s.T2, cfg);
  f.interaction = interaction_force(s, s.T1, cfg).total();
  f.env_self = self_force(s, s.Tenv, cfg);
  f.env_interaction = interaction_force(s, s.Tenv, cfg).total();
  f.total = f.self + f.interaction - f.env_self - f.env_interaction;
  if (!grid.empty() && !std::holds_alternative<DeltaToyModel>(s.particle)) {
    const auto self_at = [&](double T) {
      return sample_curve([&](double w) { return self_force_density(s, T, w, cfg); }, grid, SpectralKind::force);
    };
    const auto inter_at = [&](double T) {
      return sample_curve([&](double w) { return interaction_force_density(s, T, w, cfg).total(); }, grid,
                          SpectralKind::force);
    };
    f.self_spectrum = self_at(s.T2);
    f.interaction_spectrum = inter_at(s.T1);
    f.env_self_spectrum = self_at(s.Tenv);
    f.env_interaction_spectrum = inter_at(s.Tenv);
  }
  return f;
}

double self_force_near_field(const PlateScene& s, double T, const QuadratureConfig& cfg) {
  validate(s);
  require_dielectric(s, "near-field force");
  return band_integral(
      s.particle, s.R, T,
      [&](double w, const PolarizabilityEntries& a) { return nf_self_density_alpha(s, T, w, a); }, cfg,
      plate_breakpoints(s));
}

double total_force_near_field(const PlateScene& s, const QuadratureConfig& cfg) {
  // F1(T) = -F2(T) in this limit, so the environment terms cancel.
  return self_force_near_field(s, s.T2, cfg) - self_force_near_field(s, s.T1, cfg);
}

double mirror_self_force(double d, const ParticleMaterial& particle, double R, double T, const QuadratureConfig& cfg) {
  if (!(d > 0.0)) throw DomainError("mirror distance must be positive");
  return band_integral(
      particle, R, T, [&](double w, const PolarizabilityEntries& a) { return mirror_density(w, d, T, a); }, cfg, {},
      mirror_width(d));
}

double mirror_self_force_small_d(double d, const ParticleMaterial& particle, double R, double T,
                                 const QuadratureConfig& cfg) {
  return band_integral(
      particle, R, T,
      [&](double w, const PolarizabilityEntries& a) {
        const double k = w / kSpeedOfLight;
        return -8.0 / (15.0 * kPi) * d * planck_theta(w, T) / w * a.alpha_f.imag() * std::pow(k, 5);
      },
      cfg, {});
}

double mirror_self_force_far_field(double d, const ParticleMaterial& particle, double R, double T,
                                   const QuadratureConfig& cfg) {
  return band_integral(
      particle, R, T,
      [&](double w, const PolarizabilityEntries& a) {
        return planck_theta(w, T) * w * a.alpha_f.imag() * std::sin(2.0 * w * d / kSpeedOfLight) /
               (kPi * kSpeedOfLight * kSpeedOfLight * d * d);
      },
      cfg, {}, mirror_width(d));
}

double toy_force_shape(double x) {
  if (!(x >= 0.0)) throw DomainError("toy_force_shape requires x >= 0");
  if (x < 1.0) {
    // Sum over m >= 2 of (-1)^m 4^m [-6/(2m+1)! + 6/(2m)! - 2/(2m-1)!] x^(2m-3).
    double sum = 0.0;
    double fact_2m_minus_1 = 6.0;  // 3!
    double pow4 = 16.0;
    double xpow = x;
    double sign = 1.0;
    for (int m = 2; m < 30; ++m) {
      const double f2m = fact_2m_minus_1 * (2 * m);
      const double f2m1 = f2m * (2 * m + 1);
      const double term = sign * pow4 * (-6.0 / f2m1 + 6.0 / f2m - 2.0 / fact_2m_minus_1) * xpow;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
      fact_2m_minus_1 = f2m1;
      pow4 *= 4.0;
      xpow *= x * x;
      sign = -sign;
    }
    return sum;
  }
  const double s = std::sin(2.0 * x);
  const double c = std::cos(2.0 * x);
  return (-3.0 * s + 6.0 * x * c + 4.0 * x * x * s) / std::pow(x, 4);
}

double toy_force(double alpha0, double omega0, double T, double d) {
  return planck_theta(omega0, T) * std::pow(omega0, 3) * alpha0 * toy_force_shape(omega0 * d / kSpeedOfLight) /
         (4.0 * kPi * std::pow(kSpeedOfLight, 4));
}

double plate_nf_emission(const PlateScene& s, double T, const QuadratureConfig& cfg) {
  validate(s);
  require_dielectric(s, "plate emission");
  return band_integral(
      s.particle, s.R, T,
      [&](double w, const PolarizabilityEntries& a) { return nf_emission_density_alpha(s, T, w, a); }, cfg,
      plate_breakpoints(s));
}

double gravity_force(double R, double rho) {
  if (R < 0.0 || rho < 0.0) throw DomainError("gravity_force requires R >= 0 and rho >= 0");
  return rho * 4.0 / 3.0 * kPi * R * R * R * kStandardGravity;
}

}  // namespace nonrecip
