#pragma once

#include <string>

#include "biflag/closed_form.hpp"
#include "biflag/oracle.hpp"

namespace biflag {

struct LoadedConfig {
  RobotConfig robot;
  OracleSettings oracle;

  bool operator==(const LoadedConfig&) const = default;
};

/// Parses a JSON config document. Sections: fluid{mu, rho}, body{a, mass},
/// anterior/posterior{L, A, lambda, f, d_membrane, d_hinge, w, h, n}, thrust_scale,
/// oracle{n_segments, n_time, u_min, u_max, tol_force, tol_u}. Every key is optional;
/// unknown keys are rejected. An empty (or all-whitespace) document means all defaults.
/// Throws ConfigError naming the dotted key.
LoadedConfig parse_config(const std::string& text);
LoadedConfig load_config(const std::string& path);

/// Full JSON document that parse_config maps back to the same config.
std::string serialize_config(const LoadedConfig& cfg);

}  // namespace biflag
