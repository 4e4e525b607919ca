#include "biflag/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "biflag/errors.hpp"

namespace biflag {

RobotConfig config_for_point(const RobotConfig& base, const ExperimentalPoint& point,
                             const std::optional<AmplitudeCoupling>& coupling) {
  RobotConfig cfg = base;
  for (FlagellumSpec* f : {&cfg.anterior, &cfg.posterior}) {
    f->length = point.length;
    if (coupling) f->amplitude = coupling->amplitude(point.length);
  }
  cfg.anterior.frequency = point.f1;
  cfg.posterior.frequency = point.f2;
  return cfg;
}

double predicted_speed(const RobotConfig& base, const ExperimentalPoint& point,
                       const std::optional<AmplitudeCoupling>& coupling) {
  return solve_velocity(config_for_point(base, point, coupling));
}

std::vector<double> relative_residuals(std::span<const ExperimentalPoint> points,
                                       const RobotConfig& base,
                                       const std::optional<AmplitudeCoupling>& coupling) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (!(p.speed > 0.0)) throw DomainError("relative residual needs a positive measured speed");
    out.push_back((predicted_speed(base, p, coupling) - p.speed) / p.speed);
  }
  return out;
}

CalibrationResult fit_thrust_scale(std::span<const ExperimentalPoint> points,
                                   const RobotConfig& base,
                                   const std::optional<AmplitudeCoupling>& coupling,
                                   const CalibrationOptions& options) {
  if (points.empty()) throw DomainError("calibration needs at least one experimental point");
  if (!(options.scale_min > 0.0 && options.scale_min < options.scale_max)) {
    throw DomainError("calibration scale interval must satisfy 0 < min < max");
  }

  auto objective = [&](double log_scale) {
    RobotConfig cfg = base;
    cfg.thrust_scale = std::exp(log_scale);
    double sum = 0.0;
    for (double r : relative_residuals(points, cfg, coupling)) sum += r * r;
    return sum;
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(options.scale_min);
  double b = std::log(options.scale_max);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > options.rel_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }

  CalibrationResult result;
  result.thrust_scale = std::exp(0.5 * (a + b));
  RobotConfig fitted = base;
  fitted.thrust_scale = result.thrust_scale;
  result.residuals = relative_residuals(points, fitted, coupling);
  for (double r : result.residuals) result.max_rel_error = std::max(result.max_rel_error, std::abs(r));
  return result;
}

}  // namespace biflag
