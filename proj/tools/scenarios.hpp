#pragma once

#include <random>

#include "nonrecip/plate.hpp"
#include "nonrecip/two_particle.hpp"

namespace nonrecip::cli {

/// InSb pair with field B along x; particle 2 on the axis (parallel) or in the y-z plane.
TwoParticleScene insb_pair(double d, double B, Orientation orientation, double R1 = 10e-9, double R2 = 10e-9,
                           double T = 300.0, double omega_B_per_tesla = kInSbOmegaBPerTesla, double phi = 0.0);

/// d log-uniform in [0.05, 50] um, B uniform in [0, 10] T.
TwoParticleScene random_insb_scene(std::mt19937_64& rng, Orientation orientation);

/// Random anisotropic constant-tensor pair at a random position (alpha_s allowed).
TwoParticleScene random_tensor_scene(std::mt19937_64& rng);

/// InSb sphere (R = 50 nm) above the Lorentz plate at 100 nm, temperatures (300, 10, 0) K.
PlateScene insb_lorentz_scene(double B, double d = 100e-9, double R = 50e-9);

inline constexpr double kInSbDensity = 5780.0;  // kg/m^3

}  // namespace nonrecip::cli
