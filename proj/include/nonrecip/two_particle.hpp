#pragma once

#include <string>
#include <vector>

#include "nonrecip/materials.hpp"
#include "nonrecip/spectral.hpp"
#include "nonrecip/tensor.hpp"

namespace nonrecip {

struct ParticleSpec {
  ParticleMaterial material;
  double R = 0.0;  // m
  double T = 0.0;  // K
};

/// Position of particle 2 around the field axis x: (x, r cos phi, r sin phi).
struct CylindricalPosition {
  double r = 0.0;
  double phi = 0.0;
  double x = 0.0;
};

/// Particle 1 sits at the origin; B (if any) points along +x.
struct TwoParticleScene {
  ParticleSpec particle1;
  ParticleSpec particle2;
  CylindricalPosition position;

  Vec3 r2() const;
  double d() const;
  TwoParticleScene swapped() const;  // exchange the particles, keep the separation
};

/// Throws DomainError if the spheres overlap; returns point-particle validity warnings.
std::vector<std::string> validate(const TwoParticleScene& scene);

/// Self emission of particle 2 split by symmetry class. `plus_plus` excludes
/// the vacuum term; total = vacuum + plus_plus + minus_minus.
struct EmissionBreakdown {
  double vacuum = 0.0;
  double plus_plus = 0.0;
  double minus_minus = 0.0;
  double total = 0.0;
};

enum class Orientation { parallel, perpendicular };

/// Per-frequency traces Tr{a2I^+ G1I^+(r2,r2)} (vacuum included) and Tr{a2I^- G1I^-(r2,r2)}.
struct TracePair {
  double trace_pp = 0.0;
  double trace_mm = 0.0;
};

// --- per-frequency building blocks (spectral densities in W s/rad) ---

/// Brute-force traces with the dressed Green's tensor. `undecomposed` is
/// Tr{a2I G1I} without the +/- split.
struct OracleTraces {
  double vacuum = 0.0;
  double plus_plus = 0.0;  // interaction part only
  double minus_minus = 0.0;
  double undecomposed = 0.0;
};
OracleTraces self_emission_traces(const TwoParticleScene& scene, double omega);

EmissionBreakdown self_emission_density_oracle(const TwoParticleScene& scene, double omega);
EmissionBreakdown self_emission_density_closed(const TwoParticleScene& scene, Orientation orientation,
                                               double omega);

/// Closed-form ++ and -- traces (general phi, alpha_s allowed).
TracePair appendixD_traces(const TwoParticleScene& scene, double omega);

/// Distance functions of the closed-form self emission.
struct GFunctions {
  Complex p;
  Complex d;
  Complex f;
};
GFunctions g_functions(Orientation orientation, double x);

// --- integrated observables (W) ---

EmissionBreakdown self_emission_oracle(const TwoParticleScene& scene, const QuadratureConfig& cfg);
/// Integral of the undecomposed trace, for checking that the cross terms vanish.
double self_emission_undecomposed(const TwoParticleScene& scene, const QuadratureConfig& cfg);
EmissionBreakdown self_emission_closed(const TwoParticleScene& scene, Orientation orientation,
                                       const QuadratureConfig& cfg);
/// Vacuum emission of particle 2 (particle 1 absent).
double vacuum_emission(const ParticleSpec& particle, const QuadratureConfig& cfg);
/// Reciprocal isotropic closed form; uses alpha_p of both particles.
double self_emission_reciprocal_closed(const TwoParticleScene& scene, const QuadratureConfig& cfg);

/// Symmetry-resolved integrands of the transfer 1 -> 2 (first index: particle 1 part).
struct TransferTerms {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;
  double total() const { return pp + pm + mp + mm; }
};
TransferTerms heat_transfer_terms(const TwoParticleScene& scene, double omega);
double heat_transfer_density_12(const TwoParticleScene& scene, double omega);

/// Heat emitted by particle 1 (at T1) and absorbed by particle 2.
double heat_transfer_12(const TwoParticleScene& scene, const QuadratureConfig& cfg);

struct PersistentCurrent {
  double general = 0.0;      // trace form
  double closed = 0.0;       // cos(2 phi) form
  double relative_gap = 0.0;
  /// Bookkeeping: environment -> particle 1 and particle 2 -> environment, both equal to general.
  double environment_to_1 = 0.0;
  double particle2_to_environment = 0.0;
};

double persistent_density_general(const TwoParticleScene& scene, double T, double omega);
double persistent_density_closed(const TwoParticleScene& scene, double T, double omega);

inline constexpr double kPersistentAgreement = 1e-6;

/// Net transfer 1 -> 2 with every temperature equal to T, evaluated both ways.
/// Throws Error if the two forms disagree beyond kPersistentAgreement.
PersistentCurrent persistent_current(const TwoParticleScene& scene, double T, const QuadratureConfig& cfg);

struct TensorialCheck {
  std::string identity;
  double max_error = 0.0;  // relative to the natural scale of each term
  bool passed = false;
};

/// Small-B trace identities over random (n, d, B) triples.
std::vector<TensorialCheck> tensorial_smallB_checks(int samples = 1000, unsigned seed = 12345,
                                                    double tolerance = 1e-12);

}  // namespace nonrecip
