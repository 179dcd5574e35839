#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "nonrecip/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string config;
  std::string out;
  std::string format;
  int jobs = 1;
  double quad_rel_tol = 0.0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON scenario file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", c.out, "output file (default: stdout or the config's output.path)");
  sub->add_option("--format", c.format, "csv or json (default: csv or the config's output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--jobs", c.jobs, "sweep points evaluated concurrently")->check(CLI::PositiveNumber);
  sub->add_option("--quad-rel-tol", c.quad_rel_tol, "override quadrature.rel_tol")->check(CLI::PositiveNumber);
}

int run(const std::string& name, const Common& c) {
  using namespace nonrecip::cli;
  const Json config = load_json_file(c.config);
  RunOptions options;
  options.jobs = c.jobs;
  if (c.quad_rel_tol > 0.0) options.quad_rel_tol = c.quad_rel_tol;

  std::string out = c.out;
  std::string format = c.format;
  if (config.is_object() && config.contains("output")) {
    const Json& o = config.at("output");
    if (out.empty()) out = string_field(o, "path", "output", std::string());
    if (format.empty()) format = string_field(o, "format", "output", std::string("csv"));
  }
  if (format.empty()) format = "csv";
  if (format != "csv" && format != "json") throw nonrecip::ConfigError("output.format: expected 'csv' or 'json'");

  Dataset data;
  if (name == "emission") data = cmd_emission(config, options);
  if (name == "persistent") data = cmd_persistent(config, options);
  if (name == "force") data = cmd_force(config, options);
  if (name == "bound") data = cmd_bound(config, options);

  const std::string text = format == "csv" ? data.to_csv() : data.to_json().dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw nonrecip::ConfigError(out + ": cannot open output file");
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat radiation, persistent heat currents and propulsion forces of nonreciprocal nanoparticles"};
  app.require_subcommand(1);
  Common common;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"emission", "self emission of particle 2 near particle 1"},
      {"persistent", "persistent heat current between two particles at equal temperature"},
      {"force", "lateral force on a particle above a plate, or the mirror shape function"},
      {"bound", "per-frequency force/heat bound report"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), common);
  app.add_subcommand("selftest", "run the oracle and identity checks");

  CLI11_PARSE(app, argc, argv);
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "selftest") {
      const auto rows = nonrecip::cli::run_selftest();
      nonrecip::cli::print_selftest(rows, std::cout);
      for (const auto& r : rows)
        if (!r.passed) return 1;
      return 0;
    }
    return run(name, common);
  } catch (const nonrecip::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nonrecip::DomainError& e) {
    std::cerr << "invalid scene: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nonrecip::QuadratureError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
