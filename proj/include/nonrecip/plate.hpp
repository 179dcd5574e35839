#pragma once

#include <span>

#include "nonrecip/materials.hpp"
#include "nonrecip/spectral.hpp"

namespace nonrecip {

/// Particle above a reciprocal isotropic half space z < 0. The field B lies
/// along x (in-plane), the force is along y, and d is measured from the
/// surface to the particle center.
struct PlateScene {
  PlateMaterial plate = LorentzPlateModel{};
  ParticleMaterial particle = DrudeMagnetoModel{};
  double R = 50e-9;  // m
  double d = 100e-9;  // m
  double T1 = 300.0;   // plate, K
  double T2 = 10.0;    // particle, K
  double Tenv = 0.0;   // K
};

/// Throws DomainError unless d > R >= 0 and all temperatures are nonnegative.
void validate(const PlateScene& scene);

struct InteractionForce {
  double evanescent = 0.0;   // alpha_f channel
  double propagating = 0.0;  // alpha_s channel
  double total() const { return evanescent + propagating; }
};

struct ForceBreakdown {
  double self = 0.0;             // F2(T2)
  double interaction = 0.0;      // F1(T1)
  double env_self = 0.0;         // F2(Tenv)
  double env_interaction = 0.0;  // F1(Tenv)
  double total = 0.0;
  SpectralCurve self_spectrum;
  SpectralCurve interaction_spectrum;
  SpectralCurve env_self_spectrum;
  SpectralCurve env_interaction_spectrum;
};

// --- spectral densities (N s/rad, W s/rad) ---

double self_force_density(const PlateScene& scene, double T, double omega, const QuadratureConfig& cfg);
InteractionForce interaction_force_density(const PlateScene& scene, double T, double omega,
                                           const QuadratureConfig& cfg);
double self_force_near_field_density(const PlateScene& scene, double T, double omega);
double plate_nf_emission_density(const PlateScene& scene, double T, double omega);

// --- integrated forces (N) ---

/// Self force F2 at particle temperature T. A PerfectConductor plate uses the mirror closed form.
double self_force(const PlateScene& scene, double T, const QuadratureConfig& cfg);
/// Interaction force F1 at plate temperature T (zero for a PerfectConductor).
InteractionForce interaction_force(const PlateScene& scene, double T, const QuadratureConfig& cfg);
/// F2(T2) + F1(T1) - F2(Tenv) - F1(Tenv). Spectra are sampled only when a grid is given.
ForceBreakdown total_force(const PlateScene& scene, const QuadratureConfig& cfg,
                           std::span<const double> spectrum_grid = {});

/// Leading small-d forms: the interaction part is minus the self part at the same temperature.
double self_force_near_field(const PlateScene& scene, double T, const QuadratureConfig& cfg);
double total_force_near_field(const PlateScene& scene, const QuadratureConfig& cfg);

/// Self force in front of a perfect mirror at distance d.
double mirror_self_force(double d, const ParticleMaterial& particle, double R, double T, const QuadratureConfig& cfg);
/// Leading terms of the mirror force for d -> 0 (linear in d) and d -> infinity (oscillating, ~ 1/d^2).
double mirror_self_force_small_d(double d, const ParticleMaterial& particle, double R, double T,
                                 const QuadratureConfig& cfg);
double mirror_self_force_far_field(double d, const ParticleMaterial& particle, double R, double T,
                                   const QuadratureConfig& cfg);

/// f(x) = x^-4 [-3 sin 2x + 6x cos 2x + 4x^2 sin 2x]; series below x = 1.
double toy_force_shape(double x);
/// Mirror force for Im alpha_f = alpha0 delta(omega - omega0).
double toy_force(double alpha0, double omega0, double T, double d);

/// Near-field self emission of the particle next to the plate (W).
double plate_nf_emission(const PlateScene& scene, double T, const QuadratureConfig& cfg);

/// Weight of a sphere of radius R and density rho (kg/m^3).
double gravity_force(double R, double rho);

}  // namespace nonrecip
