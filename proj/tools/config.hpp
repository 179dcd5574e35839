#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonrecip/materials.hpp"
#include "nonrecip/plate.hpp"
#include "nonrecip/spectral.hpp"
#include "nonrecip/two_particle.hpp"

namespace nonrecip::cli {

using Json = nlohmann::json;

/// Reads a JSON file; throws ConfigError on I/O or syntax errors.
Json load_json_file(const std::string& path);

// Every parser throws ConfigError naming the offending field path, e.g.
// "particle2.material.omega_p: expected a positive number".

ParticleMaterial parse_particle_material(const Json& j, const std::string& path);
PlateMaterial parse_plate_material(const Json& j, const std::string& path);
QuadratureConfig parse_quadrature(const Json& root, const QuadratureConfig& base = {});

ParticleSpec parse_particle_spec(const Json& j, const std::string& path);
CylindricalPosition parse_position(const Json& j, const std::string& path);
PlateScene parse_plate_scene(const Json& root);

struct Sweep {
  std::string variable;
  std::vector<double> values;
};

/// Reads root["sweep"]; `allowed` lists permitted variable names. Without a
/// sweep block, returns {fallback_variable, {fallback_value}}.
Sweep parse_sweep(const Json& root, const std::vector<std::string>& allowed, const std::string& fallback_variable,
                  double fallback_value);

/// Unit label used in column headers for a sweep variable.
std::string sweep_unit(const std::string& variable);

double number_field(const Json& j, const std::string& key, const std::string& path, std::optional<double> fallback);
std::string string_field(const Json& j, const std::string& key, const std::string& path,
                         std::optional<std::string> fallback);

}  // namespace nonrecip::cli
