#include "scenarios.hpp"

#include <cmath>

namespace nonrecip::cli {

TwoParticleScene insb_pair(double d, double B, Orientation orientation, double R1, double R2, double T,
                           double omega_B_per_tesla, double phi) {
  TwoParticleScene s;
  s.particle1 = {DrudeMagnetoModel::insb(B, omega_B_per_tesla), R1, T};
  s.particle2 = {DrudeMagnetoModel::insb(B, omega_B_per_tesla), R2, T};
  s.position = orientation == Orientation::parallel ? CylindricalPosition{0.0, 0.0, d}
                                                     : CylindricalPosition{d, phi, 0.0};
  return s;
}

TwoParticleScene random_insb_scene(std::mt19937_64& rng, Orientation orientation) {
  std::uniform_real_distribution<double> log_d(std::log(0.05e-6), std::log(50e-6));
  std::uniform_real_distribution<double> field(0.0, 10.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  const double d = std::exp(log_d(rng));
  const double B = field(rng);
  return insb_pair(d, B, orientation, 10e-9, 10e-9, 300.0, kInSbOmegaBPerTesla, angle(rng));
}

TwoParticleScene random_tensor_scene(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto tensor = [&] {
    ConstantTensorModel m;
    m.eps.eps_p = {1.5 + 5.0 * u(rng), 0.1 + 3.0 * u(rng)};
    m.eps.eps_d = {1.5 + 5.0 * u(rng), 1.0 + 3.0 * u(rng)};
    m.eps.eps_s = {0.5 * (u(rng) - 0.5), 0.3 * u(rng)};
    m.eps.eps_f = {0.5 * (u(rng) - 0.5), 0.3 * (u(rng) - 0.5)};
    return m;
  };
  TwoParticleScene s;
  s.particle1 = {tensor(), 20e-9, 300.0};
  s.particle2 = {tensor(), 20e-9, 300.0};
  const double d = std::exp(std::log(0.1e-6) + u(rng) * std::log(100.0));
  const double theta = std::acos(2.0 * u(rng) - 1.0);
  s.position = {d * std::sin(theta), 2.0 * 3.14159265358979323846 * u(rng), d * std::cos(theta)};
  return s;
}

PlateScene insb_lorentz_scene(double B, double d, double R) {
  PlateScene s;
  s.plate = LorentzPlateModel{};
  s.particle = DrudeMagnetoModel::insb(B);
  s.R = R;
  s.d = d;
  s.T1 = 300.0;
  s.T2 = 10.0;
  s.Tenv = 0.0;
  return s;
}

}  // namespace nonrecip::cli
