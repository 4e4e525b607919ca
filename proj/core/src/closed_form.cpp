#include "biflag/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "biflag/errors.hpp"

namespace biflag {
namespace {

bool nearly_equal(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= 1e-12 * scale;
}

struct SharedGeometry {
  double kn_length;  // K_N L
  double gamma;
  double beta;
};

SharedGeometry shared_geometry(const RobotConfig& cfg) {
  const CompositeDrag d1 = effective_drag(cfg, Role::Anterior);
  const CompositeDrag d2 = effective_drag(cfg, Role::Posterior);
  const double b1 = derived_shape(cfg.anterior).beta;
  const double b2 = derived_shape(cfg.posterior).beta;
  const double l1 = cfg.anterior.length;
  const double l2 = cfg.posterior.length;

  auto mismatch = [](const char* what, double x, double y) {
    std::ostringstream os;
    os << "closed-form speed needs identical flagella; " << what << " differs (" << x << " vs "
       << y << "); use the RFT oracle for asymmetric geometry";
    throw AsymmetryError(os.str());
  };
  if (!nearly_equal(d1.normal, d2.normal)) mismatch("K_N", d1.normal, d2.normal);
  if (!nearly_equal(d1.gamma, d2.gamma)) mismatch("gamma", d1.gamma, d2.gamma);
  if (!nearly_equal(b1, b2)) mismatch("beta", b1, b2);
  if (!nearly_equal(l1, l2)) mismatch("L", l1, l2);
  return {d1.normal * l1, d1.gamma, b1};
}

}  // namespace

void RobotConfig::validate() const {
  fluid.validate();
  body.validate();
  if (anterior.role != Role::Anterior || posterior.role != Role::Posterior) {
    throw DomainError("robot config needs one anterior and one posterior flagellum");
  }
  anterior.validate();
  posterior.validate();
  if (!(std::isfinite(thrust_scale) && thrust_scale > 0.0)) {
    throw DomainError("thrust_scale must be > 0");
  }
}

RobotConfig default_config() { return RobotConfig{}; }

CompositeDrag effective_drag(const RobotConfig& cfg, Role role) {
  return composite_coeffs(cfg.flagellum(role), cfg.fluid).scaled(cfg.thrust_scale);
}

double flagellum_thrust(const CompositeDrag& drag, double length, double wave_speed, double beta,
                        double speed) {
  const double s = 2.0 * kPi * kPi * beta * beta;
  const double g1 = drag.gamma - 1.0;
  return drag.normal * length * ((-s * wave_speed * g1 - g1 * speed) / (1.0 + s) - speed);
}

double body_drag(const FluidMedium& fluid, const BodyGeometry& body, double speed) {
  return -6.0 * kPi * fluid.mu * body.radius * speed;
}

double solve_velocity(const RobotConfig& cfg) {
  cfg.validate();
  const SharedGeometry g = shared_geometry(cfg);
  const double b2 = g.beta * g.beta;
  const double s = 2.0 * kPi * kPi * b2;
  const double vsum = derived_shape(cfg.anterior).wave_speed + derived_shape(cfg.posterior).wave_speed;
  const double num = -kPi * kPi * b2 * g.kn_length * (g.gamma - 1.0) * vsum;
  const double den =
      g.kn_length * (g.gamma + s) + 3.0 * kPi * cfg.fluid.mu * cfg.body.radius * (1.0 + s);
  return num / den;
}

double solve_velocity_unreduced(const RobotConfig& cfg) {
  cfg.validate();
  const SharedGeometry g = shared_geometry(cfg);
  const double s = 2.0 * kPi * kPi * g.beta * g.beta;
  const double vsum = derived_shape(cfg.anterior).wave_speed + derived_shape(cfg.posterior).wave_speed;
  const double num = -(s * g.kn_length * (g.gamma - 1.0)) / (1.0 + s) * vsum;
  const double den = 2.0 * g.kn_length * ((g.gamma - 1.0) / (1.0 + s) + 1.0) +
                     6.0 * kPi * cfg.fluid.mu * cfg.body.radius;
  return num / den;
}

Powers powers(const RobotConfig& cfg, double speed) {
  // P1 and P2 differ in the sign of U inside the squared bracket.
  auto flagellum_power = [&](Role role, double u_sign) {
    const FlagellumSpec& spec = cfg.flagellum(role);
    const CompositeDrag drag = effective_drag(cfg, role);
    const DerivedShape shape = derived_shape(spec);
    const double s = 2.0 * kPi * kPi * shape.beta * shape.beta;
    const double v = shape.wave_speed;
    const double bracket = s * v + u_sign * speed;
    return drag.normal * spec.length *
           ((drag.gamma - 1.0) * bracket * bracket / (1.0 + s) + speed * speed + s * v * v);
  };
  return {flagellum_power(Role::Anterior, -1.0), flagellum_power(Role::Posterior, +1.0),
          6.0 * kPi * cfg.fluid.mu * cfg.body.radius * speed * speed};
}

double efficiency(double p0, double p1, double p2) {
  const double input = p1 + p2;
  if (input < 0.0) throw DomainError("efficiency needs P1 + P2 >= 0");
  if (input == 0.0) {
    if (p0 > 0.0) throw InconsistencyError("useful power P0 > 0 with zero flagellar power");
    return 0.0;
  }
  return p0 / input;
}

double cost_of_transport(double power, double mass, double speed) {
  if (!(speed > 0.0)) throw DomainError("cost of transport needs speed U > 0");
  if (!(mass > 0.0)) throw DomainError("cost of transport needs mass > 0");
  return power / (mass * kGravity * speed);
}

double characteristic_length(const RobotConfig& cfg) noexcept {
  if (cfg.body.radius > 0.0) return 2.0 * cfg.body.radius;
  return std::max(cfg.anterior.length, cfg.posterior.length);
}

void finish_result(const RobotConfig& cfg, SolveResult& r) {
  r.eta = efficiency(r.P0, r.P1, r.P2);
  const double speed = std::abs(r.U_X);
  const double input = r.P1 + r.P2;
  if (speed > 0.0) {
    r.CoT = cost_of_transport(input, cfg.body.mass, speed);
  } else {
    r.CoT = input > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  const double lc = characteristic_length(cfg);
  r.Re = lc > 0.0 ? reynolds_number(cfg.fluid, r.U_X, lc) : 0.0;
}

SolveResult full_solve(const RobotConfig& cfg) {
  SolveResult r;
  r.U_X = solve_velocity(cfg);
  const DerivedShape s1 = derived_shape(cfg.anterior);
  const DerivedShape s2 = derived_shape(cfg.posterior);
  r.F1 = flagellum_thrust(effective_drag(cfg, Role::Anterior), cfg.anterior.length, s1.wave_speed,
                          s1.beta, r.U_X);
  r.F2 = flagellum_thrust(effective_drag(cfg, Role::Posterior), cfg.posterior.length,
                          s2.wave_speed, s2.beta, r.U_X);
  r.F_body = body_drag(cfg.fluid, cfg.body, r.U_X);
  r.residual = r.F1 + r.F2 + r.F_body;
  const Powers p = powers(cfg, r.U_X);
  r.P1 = p.anterior;
  r.P2 = p.posterior;
  r.P0 = p.body;
  finish_result(cfg, r);
  return r;
}

}  // namespace biflag
