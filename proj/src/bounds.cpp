#include "nonrecip/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/format.hpp"

namespace nonrecip {

namespace {

BoundReport build_report(std::string channel, const PlateScene& scene, KyMax ky, std::span<const double> grid,
                         const std::function<double(double)>& force_density,
                         const std::function<double(double)>& heat_density) {
  BoundReport r;
  r.channel = std::move(channel);
  r.ky_label = ky.label();
  r.omega_grid.assign(grid.begin(), grid.end());
  for (double w : grid) {
    r.lhs.push_back(std::abs(force_density(w)) * kSpeedOfLight);
    r.rhs.push_back(heat_density(w) * kSpeedOfLight / w * ky.at(w, scene.d));
  }
  const double peak = r.rhs.empty() ? 0.0 : *std::max_element(r.rhs.begin(), r.rhs.end());
  r.abs_tol = kBoundRelativeSlack * std::max(peak, 0.0);
  for (std::size_t i = 0; i < r.lhs.size(); ++i) {
    r.margin.push_back(r.rhs[i] - r.lhs[i]);
    r.violated.push_back(r.margin.back() < -r.abs_tol);
  }
  return r;
}

std::vector<double> resolve_grid(std::span<const double> grid, double T, const QuadratureConfig& cfg) {
  if (!grid.empty()) return {grid.begin(), grid.end()};
  return default_bound_grid(T, cfg);
}

}  // namespace

double KyMax::at(double omega, double d) const {
  switch (kind) {
    case Kind::inverse_distance:
      return 1.0 / d;
    case Kind::light_cone:
      return omega / kSpeedOfLight;
    case Kind::fixed:
      return value;
  }
  return 0.0;
}

std::string KyMax::label() const {
  switch (kind) {
    case Kind::inverse_distance:
      return "1/d";
    case Kind::light_cone:
      return "omega/c";
    case Kind::fixed:
      return format_number(value);
  }
  return {};
}

bool BoundReport::any_violation() const { return std::find(violated.begin(), violated.end(), true) != violated.end(); }

double BoundReport::min_relative_margin() const {
  double m = 1.0;
  for (std::size_t i = 0; i < rhs.size(); ++i)
    if (rhs[i] > 0.0) m = std::min(m, margin[i] / rhs[i]);
  return m;
}

std::vector<double> default_bound_grid(double T, const QuadratureConfig& cfg) {
  const double hi = T > 0.0 ? omega_cutoff(T, cfg) : 1e16;
  return log_grid(std::min(1e11, hi / 10.0), hi, 400);
}

BoundReport check_bound_self(const PlateScene& scene, double T, KyMax ky, const QuadratureConfig& cfg,
                             std::span<const double> grid) {
  validate(scene);
  const auto g = resolve_grid(grid, T, cfg);
  return build_report(
      "self", scene, ky, g, [&](double w) { return self_force_density(scene, T, w, cfg); },
      [&](double w) { return plate_nf_emission_density(scene, T, w); });
}

BoundReport check_bound_interaction(const PlateScene& scene, double T, KyMax ky, const QuadratureConfig& cfg,
                                    std::span<const double> grid) {
  validate(scene);
  const auto g = resolve_grid(grid, T, cfg);
  return build_report(
      "interaction", scene, ky, g, [&](double w) { return interaction_force_density(scene, T, w, cfg).total(); },
      [&](double w) { return plate_nf_emission_density(scene, T, w); });
}

double passivity_step_margin(const ParticleMaterial& material, double R, std::span<const double> grid) {
  double m = INFINITY;
  for (double w : grid) {
    const PolarizabilityEntries a = polarizability(material, R, w);
    m = std::min(m, a.alpha_d.imag() - std::abs(a.alpha_f.imag()));
  }
  return m;
}

std::string bound_csv(std::span<const BoundReport> reports) {
  std::ostringstream os;
  os << "channel,omega [rad/s],lhs [J/rad],rhs [J/rad],margin [J/rad],violated\n";
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.omega_grid.size(); ++i)
      os << r.channel << ',' << format_number(r.omega_grid[i]) << ',' << format_number(r.lhs[i]) << ','
         << format_number(r.rhs[i]) << ',' << format_number(r.margin[i]) << ',' << (r.violated[i] ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace nonrecip
