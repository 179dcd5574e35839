#include "nonrecip/two_particle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/green.hpp"

namespace nonrecip {

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<double> scene_breakpoints(const TwoParticleScene& scene) {
  std::vector<double> bp = feature_frequencies(scene.particle1.material);
  const std::vector<double> more = feature_frequencies(scene.particle2.material);
  bp.insert(bp.end(), more.begin(), more.end());
  return bp;
}

// Half a period of e^{2i omega d / c}.
double oscillation_width(double d) { return kPi * kSpeedOfLight / (2.0 * d); }

struct SceneAlphas {
  PolarizabilityEntries a1;
  PolarizabilityEntries a2;
};

SceneAlphas alphas(const TwoParticleScene& s, double omega) {
  return {polarizability(s.particle1.material, s.particle1.R, omega),
          polarizability(s.particle2.material, s.particle2.R, omega)};
}

double emission_prefactor(double omega, double T) {
  return 8.0 * omega * omega * planck_theta(omega, T) / (kSpeedOfLight * kSpeedOfLight);
}

double vacuum_density(const PolarizabilityEntries& a2, double omega, double T) {
  const double c3 = kSpeedOfLight * kSpeedOfLight * kSpeedOfLight;
  return 4.0 / (3.0 * kPi * c3) * omega * omega * omega * planck_theta(omega, T) *
         (a2.alpha_p.imag() + 2.0 * a2.alpha_d.imag());
}

void require_no_alpha_s(const PolarizabilityEntries& a) {
  if (a.alpha_s != Complex{0.0, 0.0})
    throw DomainError("closed-form self emission requires alpha_s = 0 for both particles");
}

void check_orientation(const TwoParticleScene& s, Orientation o) {
  const double d = s.d();
  const double tol = 1e-12 * d;
  if (o == Orientation::parallel && std::abs(s.position.r) > tol)
    throw OrientationError("parallel orientation requires particle 2 on the field axis (r = 0)");
  if (o == Orientation::perpendicular && std::abs(s.position.x) > tol)
    throw OrientationError("perpendicular orientation requires particle 2 in the y-z plane (x = 0)");
}

double integrate_part(const RealFunction& f, double T, const QuadratureConfig& cfg, const std::vector<double>& bp,
                      double width) {
  return integrate_omega(f, T, cfg, bp, width).value;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

Vec3 TwoParticleScene::r2() const {
  return {position.x, position.r * std::cos(position.phi), position.r * std::sin(position.phi)};
}

double TwoParticleScene::d() const { return std::hypot(position.r, position.x); }

TwoParticleScene TwoParticleScene::swapped() const {
  TwoParticleScene s = *this;
  std::swap(s.particle1, s.particle2);
  return s;
}

std::vector<std::string> validate(const TwoParticleScene& scene) {
  const double d = scene.d();
  const double R1 = scene.particle1.R;
  const double R2 = scene.particle2.R;
  if (!(R1 >= 0.0) || !(R2 >= 0.0)) throw DomainError("particle radii must be nonnegative");
  if (!(d > R1 + R2)) throw DomainError("particles overlap: d must exceed R1 + R2");
  if (scene.particle1.T < 0.0 || scene.particle2.T < 0.0) throw DomainError("temperatures must be nonnegative");

  std::vector<std::string> warnings;
  const auto check = [&](const ParticleSpec& p, const char* name) {
    if (p.R >= d / 4.0) warnings.push_back(std::string(name) + ": radius not small against d/4");
    if (p.T > 0.0 && p.R >= thermal_wavelength(p.T) / 10.0)
      warnings.push_back(std::string(name) + ": radius not small against thermal wavelength / 10");
    if (const auto* drude = std::get_if<DrudeMagnetoModel>(&p.material); drude && p.T > 0.0) {
      const double wT = kBoltzmann * p.T / kHbar;
      double delta = INFINITY;
      for (double w : log_grid(0.1 * wT, 10.0 * wT, 64)) delta = std::min(delta, min_skin_depth(*drude, w));
      if (p.R >= delta) warnings.push_back(std::string(name) + ": radius exceeds the skin depth");
    }
  };
  check(scene.particle1, "particle1");
  check(scene.particle2, "particle2");
  return warnings;
}

OracleTraces self_emission_traces(const TwoParticleScene& scene, double omega) {
  const SceneAlphas a = alphas(scene, omega);
  const Vec3 r1{0.0, 0.0, 0.0};
  const Vec3 r2 = scene.r2();
  const double k = omega / kSpeedOfLight;

  const ComplexMatrix3 a2I = hermitian_part(alpha_matrix(a.a2));
  const SymAntisym a2 = sym_antisym_split(a2I);

  // Scattering by particle 1 only; the free coincident part is handled separately.
  // G0 is symmetric, so the (anti)symmetric part of G alpha1 G is G alpha1^(+/-) G.
  // Splitting alpha1 first avoids cancelling the large symmetric part against itself.
  const ComplexMatrix3 g21 = g0_free(r2, r1, omega);
  const ComplexMatrix3 g12 = g0_free(r1, r2, omega);
  const SymAntisym a1 = sym_antisym_split(alpha_matrix(a.a1));
  const Complex scale{4.0 * kPi * k * k, 0.0};
  ComplexMatrix3 scattered_plus = g21 * a1.plus * g12;
  ComplexMatrix3 scattered_minus = g21 * a1.minus * g12;
  scattered_plus *= scale;
  scattered_minus *= scale;
  SymAntisym s;
  s.plus = sym_antisym_split(hermitian_part(scattered_plus)).plus;
  s.minus = sym_antisym_split(hermitian_part(scattered_minus)).minus;

  const ComplexMatrix3 full = hermitian_part(g1_dressed(r2, r2, omega, a.a1, r1));

  OracleTraces t;
  t.vacuum = trace_product(a2I, g0_coincident_imag(omega)).real();
  t.plus_plus = trace_product(a2.plus, s.plus).real();
  t.minus_minus = trace_product(a2.minus, s.minus).real();
  t.undecomposed = trace_product(a2I, full).real();
  return t;
}

EmissionBreakdown self_emission_density_oracle(const TwoParticleScene& scene, double omega) {
  const OracleTraces t = self_emission_traces(scene, omega);
  const double pre = emission_prefactor(omega, scene.particle2.T);
  EmissionBreakdown e;
  e.vacuum = pre * t.vacuum;
  e.plus_plus = pre * t.plus_plus;
  e.minus_minus = pre * t.minus_minus;
  e.total = e.vacuum + e.plus_plus + e.minus_minus;
  return e;
}

GFunctions g_functions(Orientation orientation, double x) {
  const PQPair v = pq(x);
  const Complex phase = std::exp(Complex{0.0, 2.0 * x});
  const Complex p = v.p;
  const Complex q = v.q;
  if (orientation == Orientation::parallel) {
    const Complex gd = 2.0 * phase * p * p;
    return {phase * (p + q) * (p + q), gd, gd};
  }
  return {phase * p * p, phase * (2.0 * p * p + 2.0 * p * q + q * q), 2.0 * phase * p * (p + q)};
}

EmissionBreakdown self_emission_density_closed(const TwoParticleScene& scene, Orientation orientation,
                                               double omega) {
  check_orientation(scene, orientation);
  const SceneAlphas a = alphas(scene, omega);
  require_no_alpha_s(a.a1);
  require_no_alpha_s(a.a2);
  const double d = scene.d();
  const GFunctions g = g_functions(orientation, omega * d / kSpeedOfLight);
  const double theta = planck_theta(omega, scene.particle2.T);
  const double pre = 2.0 / (kPi * std::pow(d, 6)) * theta;

  EmissionBreakdown e;
  e.vacuum = vacuum_density(a.a2, omega, scene.particle2.T);
  e.plus_plus = pre * (a.a2.alpha_p.imag() * (a.a1.alpha_p * g.p).imag() +
                       a.a2.alpha_d.imag() * (a.a1.alpha_d * g.d).imag());
  e.minus_minus = pre * a.a2.alpha_f.imag() * (a.a1.alpha_f * g.f).imag();
  e.total = e.vacuum + e.plus_plus + e.minus_minus;
  return e;
}

TracePair appendixD_traces(const TwoParticleScene& scene, double omega) {
  const SceneAlphas a = alphas(scene, omega);
  const double k = omega / kSpeedOfLight;
  const double d = scene.d();
  const double d2 = d * d;
  const double x2 = scene.position.x * scene.position.x;
  const double r2 = scene.position.r * scene.position.r;
  const double s2 = std::sin(2.0 * scene.position.phi);
  const double kd = k * d;
  const PQPair v = pq(kd);
  const Complex p = v.p;
  const Complex q = v.q;
  const Complex phase = std::exp(Complex{0.0, 2.0 * kd});

  const Complex a1p = a.a1.alpha_p, a1d = a.a1.alpha_d, a1s = a.a1.alpha_s, a1f = a.a1.alpha_f;
  const double i2p = a.a2.alpha_p.imag(), i2d = a.a2.alpha_d.imag(), i2s = a.a2.alpha_s.imag(),
               i2f = a.a2.alpha_f.imag();

  const Complex pd2 = p * d2;
  const Complex diag_dd = 2.0 * pd2 * pd2 + 2.0 * pd2 * q * r2 + q * q * r2 * r2;
  // Mixed d/s coupling: 2 p d^2 q r^2 + q^2 r^4, times sin(2 phi).
  const Complex mixed_ds = (2.0 * pd2 + q * r2) * q * r2 * s2;
  const Complex pp_row = a1p * (pd2 + q * x2) * (pd2 + q * x2) + (a1d + a1s * s2) * q * q * x2 * r2;
  const Complex dd_row = a1p * q * q * x2 * r2 + a1d * diag_dd + a1s * mixed_ds;
  const Complex ss_row = a1p * q * q * x2 * r2 * s2 + a1d * mixed_ds +
                         a1s * (2.0 * pd2 * pd2 + 2.0 * pd2 * q * r2 + q * q * r2 * r2 * s2 * s2);

  const double interaction =
      i2p * (phase * pp_row).imag() + i2d * (phase * dd_row).imag() + i2s * (phase * ss_row).imag();
  const double scale = 4.0 * kPi * k * k * std::pow(d, 10);

  TracePair t;
  t.trace_pp = k / (6.0 * kPi) * (i2p + 2.0 * i2d) + interaction / scale;
  t.trace_mm = i2f * (a1f * phase * p * (pd2 + q * r2)).imag() / (2.0 * kPi * k * k * std::pow(d, 8));
  return t;
}

EmissionBreakdown self_emission_oracle(const TwoParticleScene& scene, const QuadratureConfig& cfg) {
  validate(scene);
  const double T = scene.particle2.T;
  const auto bp = scene_breakpoints(scene);
  const double width = oscillation_width(scene.d());
  EmissionBreakdown e;
  e.vacuum = integrate_part([&](double w) { return self_emission_density_oracle(scene, w).vacuum; }, T, cfg, bp,
                            width);
  e.plus_plus = integrate_part([&](double w) { return self_emission_density_oracle(scene, w).plus_plus; }, T, cfg,
                               bp, width);
  e.minus_minus = integrate_part([&](double w) { return self_emission_density_oracle(scene, w).minus_minus; }, T,
                                 cfg, bp, width);
  e.total = e.vacuum + e.plus_plus + e.minus_minus;
  return e;
}

double self_emission_undecomposed(const TwoParticleScene& scene, const QuadratureConfig& cfg) {
  validate(scene);
  const double T = scene.particle2.T;
  return integrate_part(
      [&](double w) { return emission_prefactor(w, T) * self_emission_traces(scene, w).undecomposed; }, T, cfg,
      scene_breakpoints(scene), oscillation_width(scene.d()));
}

EmissionBreakdown self_emission_closed(const TwoParticleScene& scene, Orientation orientation,
                                       const QuadratureConfig& cfg) {
  validate(scene);
  check_orientation(scene, orientation);
  const double T = scene.particle2.T;
  const auto bp = scene_breakpoints(scene);
  const double width = oscillation_width(scene.d());
  EmissionBreakdown e;
  e.vacuum = vacuum_emission(scene.particle2, cfg);
  e.plus_plus = integrate_part(
      [&](double w) { return self_emission_density_closed(scene, orientation, w).plus_plus; }, T, cfg, bp, width);
  e.minus_minus = integrate_part(
      [&](double w) { return self_emission_density_closed(scene, orientation, w).minus_minus; }, T, cfg, bp, width);
  e.total = e.vacuum + e.plus_plus + e.minus_minus;
  return e;
}

double vacuum_emission(const ParticleSpec& particle, const QuadratureConfig& cfg) {
  return integrate_omega(
             [&](double w) { return vacuum_density(polarizability(particle.material, particle.R, w), w, particle.T); },
             particle.T, cfg, feature_frequencies(particle.material))
      .value;
}

double self_emission_reciprocal_closed(const TwoParticleScene& scene, const QuadratureConfig& cfg) {
  validate(scene);
  const double T = scene.particle2.T;
  const double d = scene.d();
  const double interaction = integrate_part(
      [&](double w) {
        const SceneAlphas a = alphas(scene, w);
        const double x = w * d / kSpeedOfLight;
        const Complex ix{0.0, x};
        const Complex poly = 3.0 - 6.0 * ix - 5.0 * x * x + 2.0 * ix * x * x + x * x * x * x;
        return 4.0 / (kPi * std::pow(d, 6)) * planck_theta(w, T) * a.a2.alpha_p.imag() *
               (a.a1.alpha_p * std::exp(2.0 * ix) * poly).imag();
      },
      T, cfg, scene_breakpoints(scene), oscillation_width(d));
  return vacuum_emission(scene.particle2, cfg) + interaction;
}

TransferTerms heat_transfer_terms(const TwoParticleScene& scene, double omega) {
  const SceneAlphas a = alphas(scene, omega);
  const ComplexMatrix3 g = g0_free(scene.r2(), Vec3{0.0, 0.0, 0.0}, omega);
  const ComplexMatrix3 gd = g.adjoint();
  const SymAntisym s1 = sym_antisym_split(hermitian_part(alpha_matrix(a.a1)));
  const SymAntisym s2 = sym_antisym_split(hermitian_part(alpha_matrix(a.a2)));
  const auto term = [&](const ComplexMatrix3& x1, const ComplexMatrix3& x2) {
    return trace_product(x1 * gd * x2, g).real();
  };
  return {term(s1.plus, s2.plus), term(s1.plus, s2.minus), term(s1.minus, s2.plus), term(s1.minus, s2.minus)};
}

double heat_transfer_density_12(const TwoParticleScene& scene, double omega) {
  const double c4 = std::pow(kSpeedOfLight, 4);
  return 32.0 * kPi / c4 * std::pow(omega, 4) * planck_theta(omega, scene.particle1.T) *
         heat_transfer_terms(scene, omega).total();
}

double heat_transfer_12(const TwoParticleScene& scene, const QuadratureConfig& cfg) {
  validate(scene);
  return integrate_part([&](double w) { return heat_transfer_density_12(scene, w); }, scene.particle1.T, cfg,
                        scene_breakpoints(scene), oscillation_width(scene.d()));
}

namespace {

struct PersistentTraces {
  double forward = 0.0;   // Tr{a1I+ G* a2I- G}
  double backward = 0.0;  // Tr{a2I+ G* a1I- G}
  double magnitude = 0.0;  // norm bound on both traces
};

PersistentTraces persistent_traces(const TwoParticleScene& scene, double omega) {
  const SceneAlphas a = alphas(scene, omega);
  const ComplexMatrix3 g = g0_free(Vec3{0.0, 0.0, 0.0}, scene.r2(), omega);
  const ComplexMatrix3 gc = g.conj();
  const SymAntisym s1 = sym_antisym_split(hermitian_part(alpha_matrix(a.a1)));
  const SymAntisym s2 = sym_antisym_split(hermitian_part(alpha_matrix(a.a2)));
  const double g2 = g.norm() * g.norm();
  return {trace_product(s1.plus * gc * s2.minus, g).real(), trace_product(s2.plus * gc * s1.minus, g).real(),
          g2 * (s1.plus.norm() * s2.minus.norm() + s2.plus.norm() * s1.minus.norm())};
}

double persistent_prefactor(double T, double omega) {
  return 64.0 * kPi / std::pow(kSpeedOfLight, 4) * std::pow(omega, 4) * planck_theta(omega, T);
}

}  // namespace

double persistent_density_general(const TwoParticleScene& scene, double T, double omega) {
  const PersistentTraces t = persistent_traces(scene, omega);
  return persistent_prefactor(T, omega) * (t.forward - t.backward);
}

double persistent_density_closed(const TwoParticleScene& scene, double T, double omega) {
  const SceneAlphas a = alphas(scene, omega);
  const double d = scene.d();
  const double r = scene.position.r;
  const double pre = 16.0 * r * r * std::cos(2.0 * scene.position.phi) /
                     (kPi * std::pow(kSpeedOfLight, 3) * std::pow(d, 5));
  return pre * std::pow(omega, 3) * planck_theta(omega, T) *
         (a.a1.alpha_s.imag() * a.a2.alpha_f.imag() - a.a2.alpha_s.imag() * a.a1.alpha_f.imag());
}

PersistentCurrent persistent_current(const TwoParticleScene& scene, double T, const QuadratureConfig& cfg) {
  validate(scene);
  const auto bp = scene_breakpoints(scene);
  const double width = oscillation_width(scene.d());

  // Both forms vanish by cancellation at special angles; measure accuracy
  // against the size of the matrix products instead.
  const IntegrationResult scale = integrate_omega(
      [&](double w) { return persistent_prefactor(T, w) * persistent_traces(scene, w).magnitude; },
      T, cfg, bp, width);
  QuadratureConfig inner = cfg;
  inner.abs_tol = std::max(cfg.abs_tol, cfg.rel_tol * scale.value);

  const IntegrationResult general =
      integrate_omega([&](double w) { return persistent_density_general(scene, T, w); }, T, inner, bp, width);
  const IntegrationResult closed =
      integrate_omega([&](double w) { return persistent_density_closed(scene, T, w); }, T, inner, bp, width);

  PersistentCurrent pc;
  pc.general = general.value;
  pc.closed = closed.value;
  pc.relative_gap = relative_gap(pc.general, pc.closed);
  pc.environment_to_1 = pc.general;
  pc.particle2_to_environment = pc.general;

  const double floor = 10.0 * inner.abs_tol;
  const double gap = std::abs(pc.general - pc.closed);
  if (gap > kPersistentAgreement * std::max(std::abs(pc.general), std::abs(pc.closed)) && gap > floor)
    throw Error("persistent current: trace and closed forms disagree (relative gap " +
                std::to_string(pc.relative_gap) + ")");
  return pc;
}

std::vector<TensorialCheck> tensorial_smallB_checks(int samples, unsigned seed, double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const auto random_vec = [&] { return Vec3{uni(rng), uni(rng), uni(rng)}; };
  const auto real_mat = [](const Vec3& a, const Vec3& b) { return ComplexMatrix3::outer(a, b); };

  std::vector<TensorialCheck> checks = {
      {"Tr[B d B d] = 0"},
      {"Tr[B d B I] = -(d x B).(d x B)"},
      {"Tr[B I B I] = -2 B^2"},
      {"Tr[n d B d] = 0"},
      {"Tr[n d B I] = (n.d)(n x B).d"},
      {"Tr[n I B I] = 0"},
  };
  const ComplexMatrix3 I = ComplexMatrix3::identity();
  for (int i = 0; i < samples; ++i) {
    const Vec3 n = random_vec();
    const Vec3 d = random_vec();
    const Vec3 B = random_vec();
    const ComplexMatrix3 Bt = ComplexMatrix3::levi_civita(B);
    const ComplexMatrix3 dt = real_mat(d, d);
    const ComplexMatrix3 nt = real_mat(n, n);
    const double nb = B.norm(), nd = d.norm(), nn = n.norm();
    const Vec3 dxB = cross(d, B);

    const double values[6] = {
        (Bt * dt * Bt * dt).trace().real(),
        (Bt * dt * Bt * I).trace().real() + dot(dxB, dxB),
        (Bt * I * Bt * I).trace().real() + 2.0 * dot(B, B),
        (nt * dt * Bt * dt).trace().real(),
        (nt * dt * Bt * I).trace().real() - dot(n, d) * dot(cross(n, B), d),
        (nt * I * Bt * I).trace().real(),
    };
    const double scales[6] = {
        nb * nb * std::pow(nd, 4), nb * nb * nd * nd,          nb * nb,
        nn * nn * std::pow(nd, 4) * nb, nn * nn * nd * nd * nb, nn * nn * nb,
    };
    for (int j = 0; j < 6; ++j)
      checks[j].max_error = std::max(checks[j].max_error, std::abs(values[j]) / scales[j]);
  }
  for (auto& c : checks) c.passed = c.max_error <= tolerance;
  return checks;
}

}  // namespace nonrecip
