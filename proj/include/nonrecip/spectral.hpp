#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace nonrecip {

/// Mean photon energy hbar w / (exp(hbar w / kB T) - 1); 0 at T = 0.
double planck_theta(double omega, double T);

/// hbar c / (kB T); +inf at T = 0.
double thermal_wavelength(double T);

struct QuadratureConfig {
  double rel_tol = 1e-8;
  /// Absolute floor on the error estimate, in the integral's units.
  double abs_tol = 0.0;
  /// omega_max = factor * kB T_max / hbar.
  double omega_cutoff_factor = 45.0;
  /// The evanescent k-integral stops where exp(-2 |k_z| d) drops below this.
  double evanescent_cutoff = 1e-16;
  /// Bisections allowed beyond the initial panels.
  int max_subdivisions = 2000;
  /// Re-run omega integrals with a doubled cutoff and fail if the result moves.
  bool verify_cutoff = false;
};

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;    // estimated absolute error
  double l1_norm = 0.0;  // estimate of the integral of |f|
  int evaluations = 0;
  int subdivisions = 0;
};

using RealFunction = std::function<double(double)>;

/// Global adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
///
/// The interval is first cut at every breakpoint inside (a, b) and into
/// panels no wider than max_panel_width; the panel with the largest error
/// estimate is then bisected until the summed error is below
/// max(abs_tol, rel_tol * integral of |f|). The final sum runs over panels
/// in ascending order with compensated summation, so results do not depend
/// on how the refinement proceeded. Throws QuadratureError on exhaustion.
IntegrationResult integrate_adaptive(const RealFunction& f, double a, double b, const QuadratureConfig& cfg,
                                     std::span<const double> breakpoints = {}, double max_panel_width = 0.0,
                                     int initial_panels = 1);

/// Upper limit of the omega integrals for temperature scale T.
double omega_cutoff(double T_scale, const QuadratureConfig& cfg);

/// Integral over (0, omega_cutoff(T_scale)] of a spectral density.
/// Returns 0 for T_scale = 0.
IntegrationResult integrate_omega(const RealFunction& integrand, double T_scale, const QuadratureConfig& cfg,
                                  std::span<const double> breakpoints = {}, double max_panel_width = 0.0);

/// Integrand over k_perp. The second argument is |k_z|: sqrt(k0^2 - k^2) on
/// the propagating branch and kappa = sqrt(k^2 - k0^2) on the evanescent one,
/// supplied exactly (it cannot be recovered from k near the light line).
using KPerpFunction = std::function<double(double k, double kz_abs)>;

/// Integral over k_perp in [0, inf) split at k0 = omega/c: the propagating part is
/// integrated over [0, k0] with k = k0 sin(t), the evanescent part over kappa
/// in [0, kappa_max] where exp(-2 kappa_max d) equals the configured cutoff.
struct KPerpResult {
  double propagating = 0.0;
  double evanescent = 0.0;
  double total() const { return propagating + evanescent; }
};

KPerpResult integrate_kperp(const KPerpFunction& integrand_prop, const KPerpFunction& integrand_evan, double omega,
                            double d, const QuadratureConfig& cfg);

enum class SpectralKind { heat, force };

/// Spectral density sampled on a strictly increasing grid.
struct SpectralCurve {
  std::vector<double> omega_grid;  // rad/s
  std::vector<double> density;     // W s/rad (heat) or N s/rad (force)
  SpectralKind kind = SpectralKind::heat;
};

SpectralCurve sample_curve(const RealFunction& density, std::span<const double> grid, SpectralKind kind);

/// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);
std::vector<double> linear_grid(double lo, double hi, int n);

}  // namespace nonrecip
