#pragma once

#include "biflag/model.hpp"

namespace biflag {

inline constexpr double kGravity = 9.81;  ///< m/s^2, used by the cost of transport

/// Everything the force balance needs: fluid, body, both flagella and the
/// calibration multiplier applied to both flagella's K_N and K_L.
struct RobotConfig {
  FluidMedium fluid;
  BodyGeometry body;
  FlagellumSpec anterior = default_flagellum(Role::Anterior);
  FlagellumSpec posterior = default_flagellum(Role::Posterior);
  double thrust_scale = 1.0;

  const FlagellumSpec& flagellum(Role role) const noexcept {
    return role == Role::Anterior ? anterior : posterior;
  }
  FlagellumSpec& flagellum(Role role) noexcept {
    return role == Role::Anterior ? anterior : posterior;
  }

  void validate() const;
  bool operator==(const RobotConfig&) const = default;
};

RobotConfig default_config();

/// Composite drag of one flagellum with thrust_scale applied.
CompositeDrag effective_drag(const RobotConfig& cfg, Role role);

/// Time-averaged axial thrust of one flagellum swimming at speed U:
///   F = K_N L [(-2 pi^2 v_w (gamma - 1) beta^2 - (gamma - 1) U) / (1 + 2 pi^2 beta^2) - U]
double flagellum_thrust(const CompositeDrag& drag, double length, double wave_speed, double beta,
                        double speed);

/// Stokes drag on the body, -6 pi mu a U.
double body_drag(const FluidMedium& fluid, const BodyGeometry& body, double speed);

/// Closed-form swimming speed from the zero-net-force balance (reduced form).
/// Requires identical flagella geometry; throws AsymmetryError otherwise.
double solve_velocity(const RobotConfig& cfg);

/// The same speed evaluated through the unreduced expression
///   U = [-2 pi^2 beta^2 K_N L (gamma-1)/(1+2 pi^2 beta^2)] (v_w1+v_w2)
///       / [2 K_N L ((gamma-1)/(1+2 pi^2 beta^2) + 1) + 6 pi mu a].
/// Kept as an independent algebraic route for cross-checking solve_velocity.
double solve_velocity_unreduced(const RobotConfig& cfg);

struct Powers {
  double anterior;   ///< P1, W
  double posterior;  ///< P2, W
  double body;       ///< P0 = 6 pi mu a U^2, W
};

/// Flagellar and useful powers at swimming speed U.
Powers powers(const RobotConfig& cfg, double speed);

/// P0 / (P1 + P2); 0 when no power is involved at all.
double efficiency(double p0, double p1, double p2);

/// P / (m g U). Throws DomainError unless U > 0 and mass > 0.
double cost_of_transport(double power, double mass, double speed);

struct SolveResult {
  double U_X = 0.0;
  double F1 = 0.0;
  double F2 = 0.0;
  double F_body = 0.0;
  double residual = 0.0;
  double P1 = 0.0;
  double P2 = 0.0;
  double P0 = 0.0;
  double eta = 0.0;
  double CoT = 0.0;
  double Re = 0.0;
};

/// Speed, forces, powers, efficiency, CoT and Reynolds number of a configuration.
SolveResult full_solve(const RobotConfig& cfg);

/// Fills eta, CoT and Re from U_X, P0, P1 and P2 already stored in the result.
/// Shared by the closed-form and oracle back ends.
void finish_result(const RobotConfig& cfg, SolveResult& result);

/// Reynolds characteristic length: body diameter, or the longer flagellum for a point body.
double characteristic_length(const RobotConfig& cfg) noexcept;

}  // namespace biflag
