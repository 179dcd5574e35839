#include "nonrecip/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "nonrecip/constants.hpp"
#include "nonrecip/errors.hpp"

namespace nonrecip {

double planck_theta(double omega, double T) {
  if (!(T > 0.0)) return 0.0;
  const double x = kHbar * omega / (kBoltzmann * T);
  if (x > 700.0) return 0.0;
  return kHbar * omega / std::expm1(x);
}

double thermal_wavelength(double T) {
  if (!(T > 0.0)) return std::numeric_limits<double>::infinity();
  return kHbar * kSpeedOfLight / (kBoltzmann * T);
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
};

Panel gauss_kronrod(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * std::numeric_limits<double>::epsilon()))
    err = std::max(err, round_floor);
  p.error = err;
  p.abs_value = resabs;
  if (!std::isfinite(p.value) || !std::isfinite(p.error)) {
    std::ostringstream os;
    os << "non-finite integrand on [" << a << ", " << b << "]";
    throw QuadratureError(os.str(), std::numeric_limits<double>::infinity(), 0.0);
  }
  return p;
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break
  }
};

// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      carry_ += (sum_ - t) + v;
    else
      carry_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

IntegrationResult integrate_adaptive(const RealFunction& f, double a, double b, const QuadratureConfig& cfg,
                                     std::span<const double> breakpoints, double max_panel_width,
                                     int initial_panels) {
  IntegrationResult result;
  if (!(b > a)) return result;

  std::vector<double> cuts{a, b};
  for (double bp : breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> edges;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    int pieces = std::max(1, initial_panels);
    if (max_panel_width > 0.0)
      pieces = std::max(pieces, static_cast<int>(std::ceil((hi - lo) / max_panel_width)));
    for (int k = 0; k < pieces; ++k) edges.push_back(lo + (hi - lo) * k / pieces);
  }
  edges.push_back(b);

  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  double total_error = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gauss_kronrod(f, edges[i], edges[i + 1]);
    total_error += p.error;
    total_abs += p.abs_value;
    queue.push(p);
    result.evaluations += 15;
  }

  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * total_abs); };
  while (total_error > tolerance()) {
    if (result.subdivisions >= cfg.max_subdivisions) {
      std::ostringstream os;
      os << "adaptive quadrature did not converge after " << result.subdivisions
         << " subdivisions: estimated error " << total_error << ", requested " << tolerance();
      throw QuadratureError(os.str(), total_error, tolerance());
    }
    const Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("adaptive quadrature hit floating-point resolution", total_error, tolerance());
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    queue.push(left);
    queue.push(right);
    result.evaluations += 30;
    ++result.subdivisions;
  }

  std::vector<Panel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value, error, l1;
  for (const Panel& p : panels) {
    value.add(p.value);
    error.add(p.error);
    l1.add(p.abs_value);
  }
  result.value = value.value();
  result.error = error.value();
  result.l1_norm = l1.value();
  return result;
}

double omega_cutoff(double T_scale, const QuadratureConfig& cfg) {
  if (!(T_scale > 0.0)) return 0.0;
  return cfg.omega_cutoff_factor * kBoltzmann * T_scale / kHbar;
}

IntegrationResult integrate_omega(const RealFunction& integrand, double T_scale, const QuadratureConfig& cfg,
                                  std::span<const double> breakpoints, double max_panel_width) {
  const double upper = omega_cutoff(T_scale, cfg);
  if (!(upper > 0.0)) return {};
  // The left endpoint is never evaluated by Gauss-Kronrod, so omega = 0 is safe.
  IntegrationResult r = integrate_adaptive(integrand, 0.0, upper, cfg, breakpoints, max_panel_width, 16);
  if (cfg.verify_cutoff) {
    QuadratureConfig doubled = cfg;
    doubled.omega_cutoff_factor *= 2.0;
    doubled.verify_cutoff = false;
    const IntegrationResult wide = integrate_omega(integrand, T_scale, doubled, breakpoints, max_panel_width);
    const double allowed = std::max(cfg.abs_tol, cfg.rel_tol * std::max(r.l1_norm, wide.l1_norm));
    if (std::abs(wide.value - r.value) > allowed) {
      std::ostringstream os;
      os << "omega cutoff not converged: doubling the cutoff moved the result by " << std::abs(wide.value - r.value);
      throw QuadratureError(os.str(), std::abs(wide.value - r.value), allowed);
    }
  }
  return r;
}

KPerpResult integrate_kperp(const KPerpFunction& integrand_prop, const KPerpFunction& integrand_evan, double omega,
                            double d, const QuadratureConfig& cfg) {
  if (!(d > 0.0)) throw DomainError("integrate_kperp requires d > 0");
  const double k0 = omega / kSpeedOfLight;
  KPerpResult out;
  if (k0 > 0.0) {
    // k = k0 sin t, dk = k0 cos t dt; smooth at the light line.
    auto prop = [&](double t) {
      const double kz = k0 * std::cos(t);
      return integrand_prop(k0 * std::sin(t), kz) * kz;
    };
    // Oscillation in exp(2 i kz d) has at most k0 d / pi periods over t.
    const int panels = 1 + static_cast<int>(std::ceil(2.0 * k0 * d / kPi));
    out.propagating = integrate_adaptive(prop, 0.0, 0.5 * kPi, cfg, {}, 0.0, panels).value;
  }
  // kappa = sqrt(k^2 - k0^2), k dk = kappa dkappa.
  const double kappa_max = -std::log(cfg.evanescent_cutoff) / (2.0 * d);
  auto evan = [&](double kappa) {
    const double k = std::sqrt(kappa * kappa + k0 * k0);
    return integrand_evan(k, kappa) * kappa / k;
  };
  const double peak = 1.0 / d;
  const std::array<double, 1> bp{peak};
  out.evanescent = integrate_adaptive(evan, 0.0, kappa_max, cfg, bp, 0.0, 4).value;
  return out;
}

SpectralCurve sample_curve(const RealFunction& density, std::span<const double> grid, SpectralKind kind) {
  SpectralCurve c;
  c.kind = kind;
  c.omega_grid.assign(grid.begin(), grid.end());
  c.density.reserve(grid.size());
  for (double w : grid) c.density.push_back(density(w));
  return c;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double llo = std::log(lo);
  const double step = (std::log(hi) - llo) / (n - 1);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(llo + step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  g.back() = hi;
  return g;
}

}  // namespace nonrecip
