#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biflag/closed_form.hpp"

namespace biflag {

/// Design variables. Geometry variables (L, A, lambda) apply to both flagella.
enum class DesignParam { F1, F2, Length, Amplitude, Wavelength };

const char* to_string(DesignParam p) noexcept;
DesignParam parse_design_param(const std::string& name);  ///< f1, f2, L, A, lambda

enum class Objective { Speed, Efficiency };

const char* to_string(Objective o) noexcept;
Objective parse_objective(const std::string& name);

struct Interval {
  double lo;
  double hi;
};

struct DesignBounds {
  std::vector<std::pair<DesignParam, Interval>> intervals;
  std::optional<double> frequency_sum;  ///< enforce f1 + f2 = C

  void set(DesignParam p, Interval iv);
  const Interval* find(DesignParam p) const;
};

/// A free search axis after the constraint has been resolved.
struct SearchAxis {
  DesignParam param;
  Interval range;
};

/// Free axes implied by the bounds. With a frequency-sum constraint one of f1/f2
/// is free and the other follows; its interval is intersected accordingly.
std::vector<SearchAxis> search_axes(const DesignBounds& bounds);

/// Copy of cfg with axis values (and the dependent frequency, if constrained) applied.
RobotConfig apply_design(const RobotConfig& cfg, const DesignBounds& bounds,
                         const std::vector<SearchAxis>& axes, const std::vector<double>& values);

/// Closed-form objective value; errors carry the offending parameter values.
double evaluate_objective(const RobotConfig& cfg, Objective objective);

struct OptimizerOptions {
  int coarse_points = 17;       ///< per free axis, endpoints included
  double step_fraction = 1e-4;  ///< stop when every axis moves less than this share of its span
  int max_sweeps = 500;
};

struct OptimizationResult {
  std::vector<std::pair<DesignParam, double>> params;  ///< free axes, then the dependent frequency
  double value = 0.0;
  double coarse_value = 0.0;
  long evaluations = 0;
  int sweeps = 0;
  RobotConfig config;
};

/// Coarse tensor grid followed by coordinate-wise golden-section refinement.
/// Never returns a value below the best coarse-grid value.
OptimizationResult optimize_design(const RobotConfig& cfg, const DesignBounds& bounds,
                                   Objective objective, const OptimizerOptions& options = {});

}  // namespace biflag
