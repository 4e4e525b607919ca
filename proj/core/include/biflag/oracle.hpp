#pragma once

#include "biflag/closed_form.hpp"

namespace biflag {

/// Resolution and search controls of the numerical RFT evaluator.
struct OracleSettings {
  int n_segments = 512;  ///< trapezoid intervals along each flagellum
  int n_time = 128;      ///< trapezoid intervals over one beat period
  double u_min = -1.0;   ///< speed search interval, m/s
  double u_max = 1.0;
  double tol_force = 1e-14;  ///< N
  double tol_u = 1e-12;      ///< m/s

  void validate() const;
  bool operator==(const OracleSettings&) const = default;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }

/// Local kinematics of one flagellum element.
struct SegmentState {
  double x;
  double y;
  Vec2 tangent;     ///< unit, along +x projection of the centreline
  Vec2 normal;      ///< unit, tangent rotated by +90 degrees
  Vec2 v_material;  ///< U x + y_t y, m/s
  double ds;        ///< arc length of an element of axial extent dx
};

SegmentState segment_state(const RobotConfig& cfg, Role role, double x, double t, double speed,
                           double dx);

/// Axial component of the resistive force per unit arc length on the element at (x, t),
/// dF/ds = K_N V_N n + K_L V_L l with V = -(U x + y_t y) the fluid velocity relative to it.
double segment_force_x(const RobotConfig& cfg, Role role, double x, double t, double speed);

/// Beat-averaged axial thrust of one flagellum: composite trapezoid over its axial span
/// [attachment, attachment + L] with ds = sqrt(1 + slope^2) dx and over one period 1/f.
/// A non-beating flagellum (f = 0) is integrated as its frozen t = 0 shape.
double average_thrust(const RobotConfig& cfg, Role role, double speed,
                      const OracleSettings& settings = {});

/// Beat-averaged power dissipated by one flagellum, the integral of V . dF.
double oracle_power(const RobotConfig& cfg, Role role, double speed,
                    const OracleSettings& settings = {});

struct OracleSolution {
  double speed;
  double residual;  ///< total averaged axial force at speed, N
  int iterations;
};

/// Bisection on the total averaged force (both flagella plus body drag).
/// Throws BracketError when [u_min, u_max] does not bracket a sign change.
OracleSolution oracle_solve(const RobotConfig& cfg, const OracleSettings& settings = {});

/// SolveResult computed entirely from the numerical RFT evaluator.
SolveResult oracle_full_solve(const RobotConfig& cfg, const OracleSettings& settings = {});

}  // namespace biflag
