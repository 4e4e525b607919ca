#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "biflag/closed_form.hpp"

namespace biflag::testing {

/// Random valid configuration with geometrically identical flagella. Frequencies may differ.
inline RobotConfig random_symmetric_config(std::mt19937_64& rng) {
  auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  RobotConfig cfg;
  cfg.fluid.mu = uni(0.001, 5.0);
  cfg.fluid.rho = uni(800.0, 1300.0);
  cfg.body.radius = uni(0.0, 0.06);
  cfg.body.mass = uni(0.05, 1.0);
  FlagellumSpec f = cfg.anterior;
  f.wavelength = uni(0.08, 0.2);
  f.amplitude = uni(0.0, 0.2) * f.wavelength;
  f.length = uni(0.02, 0.3);
  f.d_membrane = uni(0.001, 0.016);
  f.d_hinge = uni(0.0005, 0.005);
  f.membrane_width = uni(0.01, 0.05);
  f.hinge_length = uni(0.005, 0.03);
  f.hinge_density = uni(0.0, 300.0);
  cfg.anterior = f;
  cfg.anterior.role = Role::Anterior;
  cfg.posterior = f;
  cfg.posterior.role = Role::Posterior;
  cfg.anterior.frequency = uni(0.0, 8.0);
  cfg.posterior.frequency = uni(0.0, 8.0);
  cfg.thrust_scale = uni(0.1, 10.0);
  return cfg;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace biflag::testing
