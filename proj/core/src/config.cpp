#include "biflag/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>

#include "biflag/errors.hpp"
#include "json.hpp"

namespace biflag {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;


double read_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key, "must be finite");
  return d;
}

int read_integer(const json& v, const std::string& key) {
  const double d = read_number(v, key);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError(key, "expected an integer");
  return static_cast<int>(d);
}

void read_section(const json& doc, const std::string& section,
                  const std::map<std::string, std::function<void(const json&, const std::string&)>>& fields) {
  if (!doc.is_object()) throw ConfigError(section, "expected an object");
  for (const auto& [name, value] : doc.items()) {
    const std::string key = section + "." + name;
    auto it = fields.find(name);
    if (it == fields.end()) throw ConfigError(key, "unknown key");
    it->second(value, key);
  }
}

auto number_into(double& target) {
  return [&target](const json& v, const std::string& key) { target = read_number(v, key); };
}

std::map<std::string, std::function<void(const json&, const std::string&)>> flagellum_fields(
    FlagellumSpec& f) {
  return {{"L", number_into(f.length)},          {"A", number_into(f.amplitude)},
          {"lambda", number_into(f.wavelength)}, {"f", number_into(f.frequency)},
          {"d_membrane", number_into(f.d_membrane)}, {"d_hinge", number_into(f.d_hinge)},
          {"w", number_into(f.membrane_width)},  {"h", number_into(f.hinge_length)},
          {"n", number_into(f.hinge_density)}};
}

void validate_loaded(const LoadedConfig& c) {
  const RobotConfig& r = c.robot;
  if (!(r.fluid.mu > 0.0)) throw ConfigError("fluid.mu", "must be > 0");
  if (!(r.fluid.rho > 0.0)) throw ConfigError("fluid.rho", "must be > 0");
  if (!(r.body.radius >= 0.0)) throw ConfigError("body.a", "must be >= 0");
  if (!(r.body.mass > 0.0)) throw ConfigError("body.mass", "must be > 0");
  for (Role role : {Role::Anterior, Role::Posterior}) {
    if (auto v = find_violation(r.flagellum(role))) {
      const std::string key = std::string(to_string(role)) + "." + v->field;
      if (v->singular) throw ConfigError(key, "slender-body validity violated");
      throw ConfigError(key, v->message);
    }
  }
  if (!(r.thrust_scale > 0.0)) throw ConfigError("thrust_scale", "must be > 0");
  const OracleSettings& o = c.oracle;
  if (o.n_segments < 16) throw ConfigError("oracle.n_segments", "must be >= 16");
  if (o.n_time < 8) throw ConfigError("oracle.n_time", "must be >= 8");
  if (!(o.u_min < o.u_max)) throw ConfigError("oracle.u_max", "must exceed oracle.u_min");
  if (!(o.tol_force > 0.0)) throw ConfigError("oracle.tol_force", "must be > 0");
  if (!(o.tol_u > 0.0)) throw ConfigError("oracle.tol_u", "must be > 0");
}

}  // namespace

LoadedConfig parse_config(const std::string& text) {
  LoadedConfig out;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return out;

  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config document must be a JSON object");

  RobotConfig& r = out.robot;
  OracleSettings& o = out.oracle;
  for (const auto& [name, value] : doc.items()) {
    if (name == "fluid") {
      read_section(value, name, {{"mu", number_into(r.fluid.mu)}, {"rho", number_into(r.fluid.rho)}});
    } else if (name == "body") {
      read_section(value, name, {{"a", number_into(r.body.radius)}, {"mass", number_into(r.body.mass)}});
    } else if (name == "anterior") {
      read_section(value, name, flagellum_fields(r.anterior));
    } else if (name == "posterior") {
      read_section(value, name, flagellum_fields(r.posterior));
    } else if (name == "thrust_scale") {
      r.thrust_scale = read_number(value, name);
    } else if (name == "oracle") {
      auto integer_into = [](int& target) {
        return [&target](const json& v, const std::string& key) { target = read_integer(v, key); };
      };
      read_section(value, name,
                   {{"n_segments", integer_into(o.n_segments)}, {"n_time", integer_into(o.n_time)},
                    {"u_min", number_into(o.u_min)}, {"u_max", number_into(o.u_max)},
                    {"tol_force", number_into(o.tol_force)}, {"tol_u", number_into(o.tol_u)}});
    } else {
      throw ConfigError(name, "unknown key");
    }
  }
  validate_loaded(out);
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("", "cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::string serialize_config(const LoadedConfig& c) {
  const RobotConfig& r = c.robot;
  auto flagellum = [](const FlagellumSpec& f) {
    return ordered_json{{"L", f.length},          {"A", f.amplitude},
                        {"lambda", f.wavelength}, {"f", f.frequency},
                        {"d_membrane", f.d_membrane}, {"d_hinge", f.d_hinge},
                        {"w", f.membrane_width},  {"h", f.hinge_length},
                        {"n", f.hinge_density}};
  };
  ordered_json doc;
  doc["fluid"] = {{"mu", r.fluid.mu}, {"rho", r.fluid.rho}};
  doc["body"] = {{"a", r.body.radius}, {"mass", r.body.mass}};
  doc["anterior"] = flagellum(r.anterior);
  doc["posterior"] = flagellum(r.posterior);
  doc["thrust_scale"] = r.thrust_scale;
  doc["oracle"] = {{"n_segments", c.oracle.n_segments}, {"n_time", c.oracle.n_time},
                   {"u_min", c.oracle.u_min},           {"u_max", c.oracle.u_max},
                   {"tol_force", c.oracle.tol_force},   {"tol_u", c.oracle.tol_u}};
  return doc.dump(2) + "\n";
}

}  // namespace biflag
