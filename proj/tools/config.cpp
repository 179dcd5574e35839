#include "config.hpp"

#include <cmath>
#include <fstream>

#include "nonrecip/errors.hpp"

namespace nonrecip::cli {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

const Json& require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

double positive_field(const Json& j, const std::string& key, const std::string& path, std::optional<double> fallback) {
  const double v = number_field(j, key, path, fallback);
  if (!(v > 0.0)) fail(join(path, key), "expected a positive number");
  return v;
}

double nonnegative_field(const Json& j, const std::string& key, const std::string& path,
                         std::optional<double> fallback) {
  const double v = number_field(j, key, path, fallback);
  if (!(v >= 0.0)) fail(join(path, key), "expected a nonnegative number");
  return v;
}

Complex complex_field(const Json& j, const std::string& key, const std::string& path, Complex fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  const std::string p = join(path, key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    const Complex z{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(p, "expected finite values");
    return z;
  }
  fail(p, "expected a number or a [re, im] pair");
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON (" + e.what() + ")");
  }
}

double number_field(const Json& j, const std::string& key, const std::string& path, std::optional<double> fallback) {
  const std::string p = join(path, key);
  if (!j.is_object() || !j.contains(key)) {
    if (fallback) return *fallback;
    fail(p, "missing required number");
  }
  const Json& v = j.at(key);
  if (!v.is_number()) fail(p, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(p, "expected a finite number");
  return x;
}

std::string string_field(const Json& j, const std::string& key, const std::string& path,
                         std::optional<std::string> fallback) {
  const std::string p = join(path, key);
  if (!j.is_object() || !j.contains(key)) {
    if (fallback) return *fallback;
    fail(p, "missing required string");
  }
  if (!j.at(key).is_string()) fail(p, "expected a string");
  return j.at(key).get<std::string>();
}

ParticleMaterial parse_particle_material(const Json& j, const std::string& path) {
  require_object(j, path);
  const std::string type = string_field(j, "type", path, std::nullopt);
  if (type == "drude_magneto") {
    DrudeMagnetoModel m;
    m.eps_inf = number_field(j, "eps_inf", path, kInSbEpsInf);
    if (!(m.eps_inf >= 1.0)) fail(join(path, "eps_inf"), "expected a number >= 1");
    m.omega_p = positive_field(j, "omega_p", path, kInSbOmegaP);
    m.omega_tau = positive_field(j, "omega_tau", path, kInSbOmegaTau);
    m.omega_B_per_tesla = number_field(j, "omega_B_per_T", path, kInSbOmegaBPerTesla);
    m.B = number_field(j, "B", path, 0.0);
    return m;
  }
  if (type == "constant_tensor") {
    ConstantTensorModel m;
    m.eps.eps_p = complex_field(j, "eps_p", path, 1.0);
    m.eps.eps_d = complex_field(j, "eps_d", path, 1.0);
    m.eps.eps_s = complex_field(j, "eps_s", path, 0.0);
    m.eps.eps_f = complex_field(j, "eps_f", path, 0.0);
    return m;
  }
  if (type == "synthetic") {
    SyntheticModel m;
    m.strength = number_field(j, "strength", path, m.strength);
    m.omega0 = positive_field(j, "omega0", path, m.omega0);
    m.gamma = positive_field(j, "gamma", path, m.gamma);
    m.eta = number_field(j, "eta", path, m.eta);
    m.p_weight = nonnegative_field(j, "p_weight", path, m.p_weight);
    return m;
  }
  if (type == "delta_toy") {
    DeltaToyModel m;
    m.alpha0 = positive_field(j, "alpha0", path, std::nullopt);
    m.omega0 = positive_field(j, "omega0", path, std::nullopt);
    return m;
  }
  fail(join(path, "type"), "unknown particle material '" + type +
                               "' (expected drude_magneto, constant_tensor, synthetic or delta_toy)");
}

PlateMaterial parse_plate_material(const Json& j, const std::string& path) {
  require_object(j, path);
  const std::string type = string_field(j, "type", path, std::nullopt);
  if (type == "lorentz") {
    LorentzPlateModel m;
    m.C1 = positive_field(j, "C1", path, m.C1);
    m.omega_1 = positive_field(j, "omega1", path, m.omega_1);
    m.gamma_1 = positive_field(j, "gamma1", path, m.gamma_1);
    return m;
  }
  if (type == "perfect_conductor") return PerfectConductor{};
  if (type == "constant") return ConstantPlateModel{complex_field(j, "eps", path, 1.0)};
  fail(join(path, "type"), "unknown plate material '" + type + "' (expected lorentz, perfect_conductor or constant)");
}

QuadratureConfig parse_quadrature(const Json& root, const QuadratureConfig& base) {
  QuadratureConfig q = base;
  if (!root.is_object() || !root.contains("quadrature")) return q;
  const Json& j = require_object(root.at("quadrature"), "quadrature");
  q.rel_tol = positive_field(j, "rel_tol", "quadrature", q.rel_tol);
  q.abs_tol = nonnegative_field(j, "abs_tol", "quadrature", q.abs_tol);
  q.omega_cutoff_factor = positive_field(j, "omega_cutoff_factor", "quadrature", q.omega_cutoff_factor);
  q.evanescent_cutoff = positive_field(j, "evanescent_cutoff", "quadrature", q.evanescent_cutoff);
  if (!(q.evanescent_cutoff < 1.0)) fail("quadrature.evanescent_cutoff", "expected a number in (0, 1)");
  const double subdivisions = positive_field(j, "max_subdivisions", "quadrature", q.max_subdivisions);
  if (subdivisions != std::floor(subdivisions)) fail("quadrature.max_subdivisions", "expected an integer");
  q.max_subdivisions = static_cast<int>(subdivisions);
  if (j.contains("verify_cutoff")) {
    if (!j.at("verify_cutoff").is_boolean()) fail("quadrature.verify_cutoff", "expected true or false");
    q.verify_cutoff = j.at("verify_cutoff").get<bool>();
  }
  return q;
}

ParticleSpec parse_particle_spec(const Json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("material")) fail(join(path, "material"), "missing material block");
  ParticleSpec p;
  p.material = parse_particle_material(j.at("material"), join(path, "material"));
  p.R = positive_field(j, "R", path, std::nullopt);
  p.T = nonnegative_field(j, "T", path, 0.0);
  return p;
}

CylindricalPosition parse_position(const Json& j, const std::string& path) {
  require_object(j, path);
  CylindricalPosition c;
  c.r = nonnegative_field(j, "r", path, 0.0);
  c.phi = number_field(j, "phi", path, 0.0);
  c.x = number_field(j, "x", path, 0.0);
  return c;
}

PlateScene parse_plate_scene(const Json& root) {
  require_object(root, "config");
  PlateScene s;
  if (!root.contains("plate")) fail("plate", "missing plate block");
  s.plate = parse_plate_material(root.at("plate"), "plate");
  if (!root.contains("particle")) fail("particle", "missing particle block");
  const Json& p = require_object(root.at("particle"), "particle");
  if (!p.contains("material")) fail("particle.material", "missing material block");
  s.particle = parse_particle_material(p.at("material"), "particle.material");
  s.R = positive_field(p, "R", "particle", std::nullopt);
  s.d = positive_field(root, "d", "", std::nullopt);
  s.T1 = nonnegative_field(root, "T1", "", 0.0);
  s.T2 = nonnegative_field(root, "T2", "", 0.0);
  s.Tenv = nonnegative_field(root, "Tenv", "", 0.0);
  if (!(s.d > s.R)) fail("d", "must exceed particle.R");
  return s;
}

Sweep parse_sweep(const Json& root, const std::vector<std::string>& allowed, const std::string& fallback_variable,
                  double fallback_value) {
  if (!root.is_object() || !root.contains("sweep")) return {fallback_variable, {fallback_value}};
  const Json& j = require_object(root.at("sweep"), "sweep");
  Sweep s;
  s.variable = string_field(j, "variable", "sweep", std::nullopt);
  if (std::find(allowed.begin(), allowed.end(), s.variable) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    fail("sweep.variable", "unsupported variable '" + s.variable + "' (expected one of " + list + ")");
  }
  if (j.contains("values")) {
    const Json& v = j.at("values");
    if (!v.is_array() || v.empty()) fail("sweep.values", "expected a nonempty array of numbers");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail("sweep.values[" + std::to_string(i) + "]", "expected a number");
      s.values.push_back(v[i].get<double>());
    }
  } else {
    const double from = number_field(j, "from", "sweep", std::nullopt);
    const double to = number_field(j, "to", "sweep", std::nullopt);
    const double points = number_field(j, "points", "sweep", std::nullopt);
    if (!(points >= 1.0) || points != std::floor(points)) fail("sweep.points", "expected a positive integer");
    const std::string scale = string_field(j, "scale", "sweep", std::string("lin"));
    const int n = static_cast<int>(points);
    if (scale == "log") {
      if (!(from > 0.0 && to > 0.0)) fail("sweep", "log scale needs positive from/to");
      s.values = log_grid(from, to, n);
    } else if (scale == "lin") {
      s.values = linear_grid(from, to, n);
    } else {
      fail("sweep.scale", "expected 'lin' or 'log'");
    }
  }
  const bool must_be_positive = s.variable == "d" || s.variable == "x";
  const bool must_be_nonnegative = s.variable == "T1" || s.variable == "T2" || s.variable == "T";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const double v = s.values[i];
    const std::string p = "sweep.values[" + std::to_string(i) + "]";
    if (!std::isfinite(v)) fail(p, "expected a finite number");
    if (must_be_positive && !(v > 0.0)) fail(p, "expected a positive value for " + s.variable);
    if (must_be_nonnegative && !(v >= 0.0)) fail(p, "expected a nonnegative temperature");
  }
  return s;
}

std::string sweep_unit(const std::string& variable) {
  if (variable == "d") return "m";
  if (variable == "B") return "T";
  if (variable == "T1" || variable == "T2" || variable == "T") return "K";
  if (variable == "phi") return "rad";
  return "1";
}

}  // namespace nonrecip::cli
