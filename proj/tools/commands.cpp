#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "nonrecip/bounds.hpp"
#include "nonrecip/errors.hpp"
#include "nonrecip/format.hpp"
#include "nonrecip/green.hpp"
#include "scenarios.hpp"

namespace nonrecip::cli {

namespace {

using Row = std::vector<Cell>;

// Evaluates task(i) for i in [0, n) on up to `jobs` threads; results keep index order.
std::vector<std::vector<Row>> parallel_rows(std::size_t n, int jobs, const std::function<std::vector<Row>(std::size_t)>& task) {
  std::vector<std::vector<Row>> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Dataset assemble(std::vector<std::string> columns, const std::vector<std::vector<Row>>& blocks) {
  Dataset d;
  d.columns = std::move(columns);
  for (const auto& block : blocks)
    for (const auto& row : block) d.rows.push_back(row);
  return d;
}

QuadratureConfig quadrature_for(const Json& config, const RunOptions& options) {
  QuadratureConfig q = parse_quadrature(config);
  if (options.quad_rel_tol) {
    if (!(*options.quad_rel_tol > 0.0)) throw ConfigError("--quad-rel-tol: expected a positive number");
    q.rel_tol = *options.quad_rel_tol;
  }
  return q;
}

std::string sweep_column(const Sweep& s) { return s.variable + " [" + sweep_unit(s.variable) + "]"; }

Orientation parse_orientation_name(const std::string& name) {
  return name == "perpendicular" ? Orientation::perpendicular : Orientation::parallel;
}

std::vector<std::string> parse_orientations(const Json& config) {
  std::vector<std::string> out;
  if (!config.contains("orientations")) return {"parallel", "perpendicular", "B0"};
  const Json& j = config.at("orientations");
  if (!j.is_array() || j.empty()) throw ConfigError("orientations: expected a nonempty array of names");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = "orientations[" + std::to_string(i) + "]";
    if (!j[i].is_string()) throw ConfigError(p + ": expected a string");
    const std::string name = j[i].get<std::string>();
    if (name != "parallel" && name != "perpendicular" && name != "B0" && name != "vacuum" && name != "position")
      throw ConfigError(p + ": unknown orientation '" + name +
                        "' (expected parallel, perpendicular, B0, vacuum or position)");
    out.push_back(name);
  }
  return out;
}

void set_field(ParticleSpec& p, double B) { p.material = with_field(p.material, B); }

// Rescales a position to distance d, keeping its direction (on-axis if it was at the origin).
CylindricalPosition at_distance(const CylindricalPosition& c, double d) {
  const double current = std::hypot(c.r, c.x);
  if (current == 0.0) return {0.0, c.phi, d};
  const double s = d / current;
  return {c.r * s, c.phi, c.x * s};
}

struct TwoParticleBase {
  TwoParticleScene scene;
  double d = 0.0;
  bool has_position = false;
};

TwoParticleBase parse_two_particle(const Json& config) {
  if (!config.is_object()) throw ConfigError("config: expected an object");
  TwoParticleBase b;
  if (!config.contains("particle1")) throw ConfigError("particle1: missing block");
  if (!config.contains("particle2")) throw ConfigError("particle2: missing block");
  b.scene.particle1 = parse_particle_spec(config.at("particle1"), "particle1");
  b.scene.particle2 = parse_particle_spec(config.at("particle2"), "particle2");
  if (config.at("particle2").contains("position")) {
    b.scene.position = parse_position(config.at("particle2").at("position"), "particle2.position");
    b.has_position = true;
  }
  const double from_position = b.scene.d();
  b.d = number_field(config, "d", "", b.has_position && from_position > 0.0 ? std::optional<double>(from_position)
                                                                              : std::nullopt);
  if (!(b.d > 0.0)) throw ConfigError("d: expected a positive number");
  if (config.contains("B")) {
    const double B = number_field(config, "B", "", std::nullopt);
    set_field(b.scene.particle1, B);
    set_field(b.scene.particle2, B);
  }
  return b;
}

double field_of(const ParticleMaterial& m) {
  if (const auto* drude = std::get_if<DrudeMagnetoModel>(&m)) return drude->B;
  return 0.0;
}

}  // namespace

std::string Dataset::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const double* v = std::get_if<double>(&row[i]))
        os << format_number(*v);
      else
        os << std::get<std::string>(row[i]);
    }
    os << '\n';
  }
  return os.str();
}

Json Dataset::to_json() const {
  Json rows_json = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const auto& cell : row) {
      if (const double* v = std::get_if<double>(&cell)) {
        if (std::isfinite(*v))
          r.push_back(*v);
        else
          r.push_back(format_number(*v));
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows_json.push_back(std::move(r));
  }
  return Json{{"columns", columns}, {"rows", std::move(rows_json)}};
}

Dataset cmd_emission(const Json& config, const RunOptions& options) {
  const TwoParticleBase base = parse_two_particle(config);
  const QuadratureConfig cfg = quadrature_for(config, options);
  const auto orientations = parse_orientations(config);
  const Sweep sweep = parse_sweep(config, {"d", "B", "T1", "T2", "phi"}, "d", base.d);
  if (std::find(orientations.begin(), orientations.end(), "position") != orientations.end() && !base.has_position)
    throw ConfigError("orientations: 'position' requires particle2.position");

  const auto blocks = parallel_rows(sweep.values.size(), options.jobs, [&](std::size_t i) {
    const double v = sweep.values[i];
    TwoParticleScene s = base.scene;
    double d = base.d;
    if (sweep.variable == "d") d = v;
    if (sweep.variable == "B") {
      set_field(s.particle1, v);
      set_field(s.particle2, v);
    }
    if (sweep.variable == "T1") s.particle1.T = v;
    if (sweep.variable == "T2") s.particle2.T = v;
    if (sweep.variable == "phi") s.position.phi = v;

    ParticleSpec isolated = s.particle2;
    set_field(isolated, 0.0);
    const double reference = vacuum_emission(isolated, cfg);

    std::vector<Row> rows;
    for (const auto& name : orientations) {
      EmissionBreakdown e;
      TwoParticleScene t = s;
      if (name == "vacuum") {
        e.vacuum = vacuum_emission(t.particle2, cfg);
        e.total = e.vacuum;
      } else if (name == "position") {
        t.position = at_distance(s.position, d);
        e = self_emission_oracle(t, cfg);
      } else {
        if (name == "B0") {
          set_field(t.particle1, 0.0);
          set_field(t.particle2, 0.0);
        }
        const Orientation o = parse_orientation_name(name);
        t.position = o == Orientation::parallel ? CylindricalPosition{0.0, 0.0, d}
                                                : CylindricalPosition{d, s.position.phi, 0.0};
        e = self_emission_closed(t, o, cfg);
      }
      rows.push_back({v, name, e.total, e.vacuum, e.plus_plus, e.minus_minus,
                      reference > 0.0 ? e.total / reference : std::nan("")});
    }
    return rows;
  });
  return assemble({sweep_column(sweep), "orientation", "H_total [W]", "H_vacuum [W]", "H_pp [W]", "H_mm [W]",
                   "H_normalized [1]"},
                  blocks);
}

Dataset cmd_persistent(const Json& config, const RunOptions& options) {
  const TwoParticleBase base = parse_two_particle(config);
  if (!base.has_position) throw ConfigError("particle2.position: required for the persistent current");
  const QuadratureConfig cfg = quadrature_for(config, options);
  const double T = number_field(config, "T", "", std::nullopt);
  if (!(T >= 0.0)) throw ConfigError("T: expected a nonnegative number");
  bool swap = false;
  if (config.contains("swap_particles")) {
    if (!config.at("swap_particles").is_boolean()) throw ConfigError("swap_particles: expected true or false");
    swap = config.at("swap_particles").get<bool>();
  }
  const Sweep sweep = parse_sweep(config, {"phi", "B", "d", "T"}, "phi", base.scene.position.phi);

  const auto blocks = parallel_rows(sweep.values.size(), options.jobs, [&](std::size_t i) {
    const double v = sweep.values[i];
    TwoParticleScene s = base.scene;
    double temperature = T;
    if (sweep.variable == "phi") s.position.phi = v;
    if (sweep.variable == "d") s.position = at_distance(s.position, v);
    if (sweep.variable == "T") temperature = v;
    if (sweep.variable == "B") {
      set_field(s.particle1, v);
      set_field(s.particle2, v);
    }
    s.particle1.T = s.particle2.T = temperature;
    if (swap) s = s.swapped();
    const PersistentCurrent pc = persistent_current(s, temperature, cfg);
    return std::vector<Row>{{v, pc.general, pc.closed, pc.relative_gap}};
  });
  return assemble({sweep_column(sweep), "H_1to2_general [W]", "H_1to2_closed [W]", "relative_gap [1]"}, blocks);
}

Dataset cmd_force(const Json& config, const RunOptions& options) {
  if (!config.is_object()) throw ConfigError("config: expected an object");
  const std::string mode = string_field(config, "mode", "", std::string("plate"));
  if (mode == "toy_shape") {
    Sweep sweep;
    if (config.contains("sweep")) {
      sweep = parse_sweep(config, {"x"}, "x", 1.0);
    } else {
      sweep = {"x", linear_grid(0.05, 20.0, 400)};
    }
    const auto blocks = parallel_rows(sweep.values.size(), options.jobs, [&](std::size_t i) {
      return std::vector<Row>{{sweep.values[i], toy_force_shape(sweep.values[i])}};
    });
    return assemble({"x [1]", "f(x) [1]"}, blocks);
  }
  if (mode != "plate") throw ConfigError("mode: expected 'plate' or 'toy_shape'");

  PlateScene base = parse_plate_scene(config);
  if (config.contains("B")) base.particle = with_field(base.particle, number_field(config, "B", "", std::nullopt));
  const double rho = number_field(config, "rho", "", kInSbDensity);
  if (!(rho >= 0.0)) throw ConfigError("rho: expected a nonnegative density in kg/m^3");
  const QuadratureConfig cfg = quadrature_for(config, options);
  const Sweep sweep = parse_sweep(config, {"B", "d", "T1", "T2", "Tenv"}, "B", field_of(base.particle));
  const double weight = gravity_force(base.R, rho);

  const auto blocks = parallel_rows(sweep.values.size(), options.jobs, [&](std::size_t i) {
    const double v = sweep.values[i];
    PlateScene s = base;
    if (sweep.variable == "B") s.particle = with_field(s.particle, v);
    if (sweep.variable == "d") s.d = v;
    if (sweep.variable == "T1") s.T1 = v;
    if (sweep.variable == "T2") s.T2 = v;
    if (sweep.variable == "Tenv") s.Tenv = v;
    const ForceBreakdown f = total_force(s, cfg);
    const double nf =
        std::holds_alternative<PerfectConductor>(s.plate) ? std::nan("") : total_force_near_field(s, cfg);
    return std::vector<Row>{{v, f.self, f.interaction, f.env_self, f.env_interaction, f.total,
                             weight > 0.0 ? f.total / weight : std::nan(""), nf}};
  });
  return assemble({sweep_column(sweep), "F_self [N]", "F_interaction [N]", "F_env_self [N]",
                   "F_env_interaction [N]", "F_total [N]", "F_total/F_g [1]", "F_nearfield_closed [N]"},
                  blocks);
}

Dataset cmd_bound(const Json& config, const RunOptions& options) {
  PlateScene scene = parse_plate_scene(config);
  if (config.contains("B")) scene.particle = with_field(scene.particle, number_field(config, "B", "", std::nullopt));
  const QuadratureConfig cfg = quadrature_for(config, options);
  const double T = number_field(config, "T", "", 300.0);
  if (!(T >= 0.0)) throw ConfigError("T: expected a nonnegative number");

  KyMax ky = KyMax::inverse_distance();
  if (config.contains("k_y_max")) {
    const Json& k = config.at("k_y_max");
    if (k.is_string() && k.get<std::string>() == "1/d") {
      ky = KyMax::inverse_distance();
    } else if (k.is_string() && k.get<std::string>() == "omega/c") {
      ky = KyMax::light_cone();
    } else if (k.is_number() && k.get<double>() > 0.0) {
      ky = KyMax::fixed(k.get<double>());
    } else {
      throw ConfigError("k_y_max: expected \"1/d\", \"omega/c\" or a positive number in rad/m");
    }
  }
  std::vector<double> grid;
  if (config.contains("grid")) {
    const Json& g = config.at("grid");
    const double from = number_field(g, "from", "grid", std::nullopt);
    const double to = number_field(g, "to", "grid", std::nullopt);
    const double points = number_field(g, "points", "grid", std::nullopt);
    if (!(from > 0.0 && to > from)) throw ConfigError("grid: expected 0 < from < to");
    if (!(points >= 2.0) || points != std::floor(points)) throw ConfigError("grid.points: expected an integer >= 2");
    grid = log_grid(from, to, static_cast<int>(points));
  } else {
    grid = default_bound_grid(T, cfg);
  }
  std::vector<std::string> channels{"self", "interaction"};
  if (config.contains("channels")) {
    channels.clear();
    const Json& c = config.at("channels");
    if (!c.is_array() || c.empty()) throw ConfigError("channels: expected a nonempty array");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_string() || (c[i] != "self" && c[i] != "interaction"))
        throw ConfigError("channels[" + std::to_string(i) + "]: expected 'self' or 'interaction'");
      channels.push_back(c[i].get<std::string>());
    }
  }
  const auto blocks = parallel_rows(channels.size(), options.jobs, [&](std::size_t i) {
    const BoundReport r = channels[i] == "self" ? check_bound_self(scene, T, ky, cfg, grid)
                                                : check_bound_interaction(scene, T, ky, cfg, grid);
    std::vector<Row> rows;
    for (std::size_t k = 0; k < r.omega_grid.size(); ++k)
      rows.push_back({r.channel, r.omega_grid[k], r.lhs[k], r.rhs[k], r.margin[k], r.violated[k] ? 1.0 : 0.0});
    return rows;
  });
  return assemble({"channel", "omega [rad/s]", "lhs [J/rad]", "rhs [J/rad]", "margin [J/rad]", "violated"}, blocks);
}

std::vector<SelftestRow> run_selftest() {
  std::vector<SelftestRow> rows;
  const QuadratureConfig cfg;
  std::mt19937_64 rng(2024);

  const auto record = [&](std::string name, const std::function<std::pair<bool, std::string>()>& check) {
    try {
      auto [ok, detail] = check();
      rows.push_back({std::move(name), ok, std::move(detail)});
    } catch (const std::exception& e) {
      rows.push_back({std::move(name), false, std::string("exception: ") + e.what()});
    }
  };
  const auto sci = [](double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
  };

  record("closed form vs trace oracle (10 InSb scenes)", [&] {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Orientation o = i % 2 ? Orientation::perpendicular : Orientation::parallel;
      const TwoParticleScene s = random_insb_scene(rng, o);
      const EmissionBreakdown a = self_emission_oracle(s, cfg);
      const EmissionBreakdown b = self_emission_closed(s, o, cfg);
      worst = std::max(worst, std::abs(a.total - b.total) / std::abs(a.total));
    }
    return std::pair{worst <= 1e-6, "max rel " + sci(worst)};
  });
  record("closed-form traces vs 3x3 traces (100 scenes)", [&] {
    double worst = 0.0;
    std::uniform_real_distribution<double> lw(std::log(1e12), std::log(1e15));
    for (int i = 0; i < 100; ++i) {
      const TwoParticleScene s = random_tensor_scene(rng);
      const double w = std::exp(lw(rng));
      const OracleTraces t = self_emission_traces(s, w);
      const TracePair a = appendixD_traces(s, w);
      const double pp = t.vacuum + t.plus_plus;
      worst = std::max(worst, std::abs(pp - a.trace_pp) / std::abs(pp));
      worst = std::max(worst, std::abs(t.minus_minus - a.trace_mm) / std::max(std::abs(t.minus_minus), 1e-300));
    }
    return std::pair{worst <= 1e-10, "max rel " + sci(worst)};
  });
  record("++/-- split equals undecomposed trace", [&] {
    const TwoParticleScene s = insb_pair(0.2e-6, 10.0, Orientation::perpendicular);
    const EmissionBreakdown e = self_emission_oracle(s, cfg);
    const double full = self_emission_undecomposed(s, cfg);
    const double rel = std::abs(e.total - full) / std::abs(full);
    return std::pair{rel <= 1e-10, "rel " + sci(rel)};
  });
  record("Tr{symmetric * antisymmetric} = 0 (1000 pairs)", [&] {
    std::normal_distribution<double> n(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      ComplexMatrix3 a, k;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          a(r, c) = {n(rng), n(rng)};
          k(r, c) = {n(rng), n(rng)};
        }
      const SymAntisym sa = sym_antisym_split(a);
      const SymAntisym sk = sym_antisym_split(k);
      worst = std::max(worst, std::abs(trace_product(sa.plus, sk.minus)) / (sa.plus.norm() * sk.minus.norm()));
    }
    return std::pair{worst < 1e-12, "max rel " + sci(worst)};
  });
  record("small-B tensorial identities (1000 triples)", [&] {
    bool ok = true;
    double worst = 0.0;
    for (const auto& c : tensorial_smallB_checks()) {
      ok = ok && c.passed;
      worst = std::max(worst, c.max_error);
    }
    return std::pair{ok, "max rel " + sci(worst)};
  });
  record("persistent current: trace vs cos(2 phi) form", [&] {
    TwoParticleScene s;
    ConstantTensorModel aniso;
    aniso.eps = {Complex{4.0, 1.0}, Complex{3.0, 1.0}, Complex{0.5, 0.4}, Complex{0.0, 0.0}};
    s.particle1 = {aniso, 10e-9, 300.0};
    s.particle2 = {DrudeMagnetoModel::insb(10.0), 10e-9, 300.0};
    s.position = {0.2e-6 / std::sqrt(2.0), 0.0, 0.2e-6 / std::sqrt(2.0)};
    const PersistentCurrent pc = persistent_current(s, 300.0, cfg);
    return std::pair{pc.relative_gap <= 1e-6 && pc.general != 0.0, "rel gap " + sci(pc.relative_gap)};
  });
  return rows;
}

void print_selftest(const std::vector<SelftestRow>& rows, std::ostream& out) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.name.size());
  for (const auto& r : rows)
    out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width) + 2) << r.name
        << r.detail << '\n';
}

}  // namespace nonrecip::cli
