#pragma once

#include <optional>
#include <span>
#include <vector>

#include "biflag/closed_form.hpp"
#include "biflag/dataset.hpp"

namespace biflag {

struct CalibrationResult {
  double thrust_scale = 1.0;
  std::vector<double> residuals;  ///< (U_model - U_exp) / U_exp per fitted point
  double max_rel_error = 0.0;     ///< max |residual|
};

struct CalibrationOptions {
  double scale_min = 1e-3;
  double scale_max = 1e3;
  double rel_tol = 1e-6;  ///< golden-section stopping width in ln(scale)
};

/// Base config with the point's flagellum length and frequencies applied to both
/// flagella, and the amplitude taken from the coupling when one is given.
RobotConfig config_for_point(const RobotConfig& base, const ExperimentalPoint& point,
                             const std::optional<AmplitudeCoupling>& coupling);

/// Closed-form speed the model predicts for a measurement's operating point.
double predicted_speed(const RobotConfig& base, const ExperimentalPoint& point,
                       const std::optional<AmplitudeCoupling>& coupling);

/// Relative residuals of every point at the thrust_scale stored in base.
std::vector<double> relative_residuals(std::span<const ExperimentalPoint> points,
                                       const RobotConfig& base,
                                       const std::optional<AmplitudeCoupling>& coupling);

/// Least-squares fit of thrust_scale to relative speed errors, by golden-section
/// search over ln(scale). Throws DomainError for an empty point set.
CalibrationResult fit_thrust_scale(std::span<const ExperimentalPoint> points,
                                   const RobotConfig& base,
                                   const std::optional<AmplitudeCoupling>& coupling,
                                   const CalibrationOptions& options = {});

}  // namespace biflag
