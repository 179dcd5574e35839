#include "nonrecip/materials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"

namespace nonrecip {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive_frequency(double omega, const char* where) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    std::ostringstream os;
    os << where << ": frequency must be positive, got " << omega;
    throw DomainError(os.str());
  }
}

bool near_zero(Complex value, double scale) {
  return std::abs(value) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

}  // namespace

PermittivityEntries eps_magneto(const DrudeMagnetoModel& m, double omega) {
  require_positive_frequency(omega, "eps_magneto");
  const Complex w_damped(omega, m.omega_tau);  // omega + i omega_tau
  const double wp2 = m.omega_p * m.omega_p;
  const double wB = m.omega_B();
  const Complex gyro = omega * (w_damped * w_damped - wB * wB);
  PermittivityEntries e;
  e.eps_p = m.eps_inf - wp2 / (omega * w_damped);
  e.eps_d = m.eps_inf - wp2 * w_damped / gyro;
  e.eps_f = -wB * wp2 / gyro;
  e.eps_s = 0.0;
  return e;
}

Complex eps_plate(const LorentzPlateModel& m, double omega) {
  const double w1sq = m.omega_1 * m.omega_1;
  return 1.0 + m.C1 * w1sq / Complex(w1sq - omega * omega, -m.gamma_1 * omega);
}

Complex plate_permittivity(const PlateMaterial& plate, double omega) {
  return std::visit(Overloaded{
                        [&](const LorentzPlateModel& m) { return eps_plate(m, omega); },
                        [](const ConstantPlateModel& m) { return m.eps; },
                        [](const PerfectConductor&) -> Complex {
                          throw DomainError("a perfect conductor has no finite permittivity");
                        },
                    },
                    plate);
}

PolarizabilityEntries eps_to_alpha(const PermittivityEntries& e, double R, double omega) {
  const double volume = R * R * R;
  const Complex p_den = e.eps_p + 2.0;
  const Complex d_plus = e.eps_d + 2.0;
  const Complex den = d_plus * d_plus - (e.eps_s * e.eps_s + e.eps_f * e.eps_f);
  const double scale = std::norm(d_plus) + std::norm(e.eps_s) + std::norm(e.eps_f);
  if (near_zero(p_den, std::abs(e.eps_p) + 2.0) || near_zero(den, scale)) {
    std::ostringstream os;
    os << "eps_to_alpha: resonant Clausius-Mossotti denominator at omega = " << omega << " rad/s";
    throw ResonanceError(os.str(), omega);
  }
  PolarizabilityEntries a;
  a.radius = R;
  a.alpha_p = (e.eps_p - 1.0) / p_den * volume;
  a.alpha_d = (1.0 - 3.0 * d_plus / den) * volume;
  a.alpha_s = 3.0 * e.eps_s / den * volume;
  a.alpha_f = 3.0 * e.eps_f / den * volume;
  return a;
}

ComplexMatrix3 alpha_matrix(const PolarizabilityEntries& a) {
  const Complex i(0.0, 1.0);
  ComplexMatrix3 m;
  m(0, 0) = a.alpha_p;
  m(1, 1) = a.alpha_d;
  m(2, 2) = a.alpha_d;
  m(1, 2) = a.alpha_s - i * a.alpha_f;
  m(2, 1) = a.alpha_s + i * a.alpha_f;
  return m;
}

PolarizabilityEntries polarizability(const ParticleMaterial& material, double R, double omega) {
  return std::visit(
      Overloaded{
          [&](const DrudeMagnetoModel& m) { return eps_to_alpha(eps_magneto(m, omega), R, omega); },
          [&](const ConstantTensorModel& m) { return eps_to_alpha(m.eps, R, omega); },
          [&](const SyntheticModel& m) {
            const double w0sq = m.omega0 * m.omega0;
            const Complex line = R * R * R * m.strength * w0sq / Complex(w0sq - omega * omega, -m.gamma * omega);
            PolarizabilityEntries a;
            a.radius = R;
            a.alpha_d = line;
            a.alpha_f = m.eta * line;
            a.alpha_p = m.p_weight * line;
            return a;
          },
          [&](const DeltaToyModel&) -> PolarizabilityEntries {
            throw DomainError("delta_toy material has no pointwise polarizability");
          },
      },
      material);
}

std::vector<double> feature_frequencies(const ParticleMaterial& material) {
  return std::visit(
      Overloaded{
          [](const DrudeMagnetoModel& m) {
            // eps_p = -2 and the two gyrotropic split modes w (w -+ wB) = W^2.
            const double big_omega = m.omega_p / std::sqrt(m.eps_inf + 2.0);
            const double wB = std::abs(m.omega_B());
            const double root = std::sqrt(wB * wB + 4.0 * big_omega * big_omega);
            std::vector<double> f{big_omega, 0.5 * (root + wB), 0.5 * (root - wB)};
            if (wB > 0.0) f.push_back(wB);
            return f;
          },
          [](const ConstantTensorModel&) { return std::vector<double>{}; },
          [](const SyntheticModel& m) { return std::vector<double>{m.omega0}; },
          [](const DeltaToyModel& m) { return std::vector<double>{m.omega0}; },
      },
      material);
}

std::vector<double> feature_frequencies(const PlateMaterial& material) {
  return std::visit(Overloaded{
                        [](const LorentzPlateModel& m) {
                          // Bulk resonance and the surface mode eps1 = -1.
                          return std::vector<double>{m.omega_1, m.omega_1 * std::sqrt(1.0 + 0.5 * m.C1)};
                        },
                        [](const PerfectConductor&) { return std::vector<double>{}; },
                        [](const ConstantPlateModel&) { return std::vector<double>{}; },
                    },
                    material);
}

ParticleMaterial with_field(const ParticleMaterial& material, double B) {
  if (const auto* drude = std::get_if<DrudeMagnetoModel>(&material)) {
    DrudeMagnetoModel copy = *drude;
    copy.B = B;
    return copy;
  }
  return material;
}

PassivityReport passivity_check(const PolarizabilityEntries& a) {
  // Hermitian part: diag(Im ap) (+) [[Im ad, Im as - i Im af], [Im as + i Im af, Im ad]].
  const double ip = a.alpha_p.imag();
  const double id = a.alpha_d.imag();
  const double off = std::hypot(a.alpha_s.imag(), a.alpha_f.imag());
  PassivityReport r;
  r.eigenvalues = {ip, id - off, id + off};
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  r.passive = r.eigenvalues[0] >= kPassivityTolerance;
  if (!r.passive) {
    std::ostringstream os;
    os << "Hermitian part of alpha has negative eigenvalue " << r.eigenvalues[0] << " m^3"
       << " (Im ap = " << ip << ", Im ad = " << id << ", |Im as + i Im af| = " << off << ")";
    r.diagnostics = os.str();
  }
  return r;
}

Complex sqrt_upper(Complex z) {
  Complex s = std::sqrt(z);
  if (s.imag() < 0.0) s = -s;
  return s;
}

namespace {

// r = (a - b)/(a + b) with a = eps1 kz, b = kz1. Writing the numerator as
// (a - b)(a + b)* keeps Im r and 1 - |r|^2 accurate when |r| is close to 1.
struct FresnelParts {
  Complex a_conj_b;
  double norm_a = 0.0;
  double norm_b = 0.0;
  double denominator = 0.0;
};

// kz1^2 = eps1 k0^2 - k^2 = (eps1 - 1) k0^2 + kz^2, so only kz is needed.
FresnelParts fresnel_parts(double omega, Complex kz, Complex eps1) {
  const double k0 = omega / kSpeedOfLight;
  const Complex kz1 = sqrt_upper((eps1 - 1.0) * (k0 * k0) + kz * kz);
  const Complex a = eps1 * kz;
  return {a * std::conj(kz1), std::norm(a), std::norm(kz1), std::norm(a + kz1)};
}

Complex vacuum_kz(double omega, double k_perp) {
  const double k0 = omega / kSpeedOfLight;
  return sqrt_upper(Complex((k0 - k_perp) * (k0 + k_perp), 0.0));
}

Complex rN_from(const FresnelParts& f) {
  if (f.denominator == 0.0) return 0.0;
  return Complex{(f.norm_a - f.norm_b) / f.denominator, 2.0 * f.a_conj_b.imag() / f.denominator};
}

double transmissivity_from(const FresnelParts& f) {
  if (f.denominator == 0.0) return 1.0;
  return 4.0 * f.a_conj_b.real() / f.denominator;
}

}  // namespace

Complex fresnel_rN(double omega, double k_perp, Complex eps1) {
  return rN_from(fresnel_parts(omega, vacuum_kz(omega, k_perp), eps1));
}

Complex fresnel_rN_kz(double omega, Complex kz, Complex eps1) { return rN_from(fresnel_parts(omega, kz, eps1)); }

double fresnel_rN_transmissivity(double omega, double k_perp, Complex eps1) {
  return transmissivity_from(fresnel_parts(omega, vacuum_kz(omega, k_perp), eps1));
}

double fresnel_rN_transmissivity_kz(double omega, Complex kz, Complex eps1) {
  return transmissivity_from(fresnel_parts(omega, kz, eps1));
}

double skin_depth(double omega, Complex eps_entry) {
  const double im = sqrt_upper(eps_entry).imag();
  if (!(im > 0.0)) return std::numeric_limits<double>::infinity();
  return kSpeedOfLight / (omega * im);
}

double min_skin_depth(const DrudeMagnetoModel& model, double omega) {
  const PermittivityEntries e = eps_magneto(model, omega);
  return std::min({skin_depth(omega, e.eps_p), skin_depth(omega, e.eps_d), skin_depth(omega, e.eps_d + e.eps_f),
                   skin_depth(omega, e.eps_d - e.eps_f)});
}

}  // namespace nonrecip
