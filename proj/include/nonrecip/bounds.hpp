#pragma once

#include <span>
#include <string>
#include <vector>

#include "nonrecip/plate.hpp"

namespace nonrecip {

/// Largest lateral wavenumber admitted in the bound. The default 1/d is the
/// near-field choice; light_cone uses omega/c at each frequency.
struct KyMax {
  enum class Kind { inverse_distance, light_cone, fixed };
  Kind kind = Kind::inverse_distance;
  double value = 0.0;  // rad/m, for Kind::fixed

  static KyMax inverse_distance() { return {}; }
  static KyMax light_cone() { return {Kind::light_cone, 0.0}; }
  static KyMax fixed(double k) { return {Kind::fixed, k}; }
  double at(double omega, double d) const;
  std::string label() const;
};

/// Per-frequency comparison |f(omega)| c <= h(omega) (c/omega) k_y_max, in J/rad.
struct BoundReport {
  std::string channel;  // "self" or "interaction"
  std::string ky_label;
  std::vector<double> omega_grid;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> margin;  // rhs - lhs
  std::vector<bool> violated;  // margin < -abs_tol
  double abs_tol = 0.0;        // 1e-3 max(rhs)

  bool any_violation() const;
  /// min(margin / rhs) over frequencies with rhs > 0 (1 if none).
  double min_relative_margin() const;
};

inline constexpr double kBoundRelativeSlack = 1e-3;

/// Default frequency grid: 400 log-spaced points up to the cutoff for T.
std::vector<double> default_bound_grid(double T, const QuadratureConfig& cfg);

/// Self force of the particle at T against its near-field emission into the plate.
BoundReport check_bound_self(const PlateScene& scene, double T, KyMax k_y_max, const QuadratureConfig& cfg,
                             std::span<const double> grid = {});
/// Interaction force from the plate at T against the near-field transfer from the plate.
BoundReport check_bound_interaction(const PlateScene& scene, double T, KyMax k_y_max, const QuadratureConfig& cfg,
                                    std::span<const double> grid = {});

/// Smallest Im alpha_d - |Im alpha_f| over the grid (m^3); nonnegative for passive particles.
double passivity_step_margin(const ParticleMaterial& material, double R, std::span<const double> grid);

/// CSV with header "channel,omega [rad/s],lhs [J/rad],rhs [J/rad],margin [J/rad],violated".
std::string bound_csv(std::span<const BoundReport> reports);

}  // namespace nonrecip
