#include "biflag/oracle.hpp"

#include <cmath>
#include <sstream>

#include "biflag/errors.hpp"

namespace biflag {
namespace {

struct ElementLoad {
  double force_x;  // dF_x/ds
  double power;    // V . dF/ds
};

ElementLoad element_load(const CompositeDrag& drag, const SegmentState& seg) {
  const Vec2 rel{-seg.v_material.x, -seg.v_material.y};
  const double vn = dot(rel, seg.normal);
  const double vl = dot(rel, seg.tangent);
  const Vec2 force{drag.normal * vn * seg.normal.x + drag.tangent * vl * seg.tangent.x,
                   drag.normal * vn * seg.normal.y + drag.tangent * vl * seg.tangent.y};
  return {force.x, dot(rel, force)};
}

// Integrates load(t, x) ds over the flagellum and averages over one beat.
template <typename Load>
double beat_average(const RobotConfig& cfg, Role role, const OracleSettings& settings,
                    Load&& load) {
  settings.validate();
  const FlagellumSpec& spec = cfg.flagellum(role);
  const double length = spec.length;
  if (length == 0.0) return 0.0;

  const int nx = settings.n_segments;
  const double dx = length / nx;
  const double x0 = attachment_x(role, cfg.body.radius);
  const double dir = outward_sign(role);

  auto space_integral = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i <= nx; ++i) {
      const double w = (i == 0 || i == nx) ? 0.5 : 1.0;
      // The last node is placed exactly at the tip to avoid drift past it.
      const double x = i == nx ? x0 + dir * length : x0 + dir * (i * dx);
      sum += w * load(x, t, dx);
    }
    return sum;
  };

  if (spec.frequency == 0.0) return space_integral(0.0);

  const int nt = settings.n_time;
  const double period = 1.0 / spec.frequency;
  const double dt = period / nt;
  double acc = 0.0;
  for (int j = 0; j <= nt; ++j) {
    const double w = (j == 0 || j == nt) ? 0.5 : 1.0;
    acc += w * space_integral(j * dt);
  }
  return acc * dt / period;
}

}  // namespace

void OracleSettings::validate() const {
  if (n_segments < 16) throw DomainError("oracle n_segments must be >= 16");
  if (n_time < 8) throw DomainError("oracle n_time must be >= 8");
  if (!(std::isfinite(u_min) && std::isfinite(u_max) && u_min < u_max)) {
    throw DomainError("oracle speed bracket must be finite with u_min < u_max");
  }
  if (!(tol_force > 0.0)) throw DomainError("oracle tol_force must be > 0");
  if (!(tol_u > 0.0)) throw DomainError("oracle tol_u must be > 0");
}

SegmentState segment_state(const RobotConfig& cfg, Role role, double x, double t, double speed,
                           double dx) {
  const WaveSample w = waveform_eval(cfg.flagellum(role), cfg.body.radius, x, t);
  const double stretch = std::sqrt(1.0 + w.slope * w.slope);
  const Vec2 tangent{1.0 / stretch, w.slope / stretch};
  const Vec2 normal{-tangent.y, tangent.x};
  return {x, w.y, tangent, normal, {speed, w.y_t}, stretch * dx};
}

double segment_force_x(const RobotConfig& cfg, Role role, double x, double t, double speed) {
  return element_load(effective_drag(cfg, role), segment_state(cfg, role, x, t, speed, 1.0))
      .force_x;
}

double average_thrust(const RobotConfig& cfg, Role role, double speed,
                      const OracleSettings& settings) {
  const CompositeDrag drag = effective_drag(cfg, role);
  return beat_average(cfg, role, settings, [&](double x, double t, double dx) {
    const SegmentState seg = segment_state(cfg, role, x, t, speed, dx);
    return element_load(drag, seg).force_x * seg.ds;
  });
}

double oracle_power(const RobotConfig& cfg, Role role, double speed,
                    const OracleSettings& settings) {
  const CompositeDrag drag = effective_drag(cfg, role);
  return beat_average(cfg, role, settings, [&](double x, double t, double dx) {
    const SegmentState seg = segment_state(cfg, role, x, t, speed, dx);
    return element_load(drag, seg).power * seg.ds;
  });
}

OracleSolution oracle_solve(const RobotConfig& cfg, const OracleSettings& settings) {
  cfg.validate();
  settings.validate();
  auto total = [&](double u) {
    return average_thrust(cfg, Role::Anterior, u, settings) +
           average_thrust(cfg, Role::Posterior, u, settings) + body_drag(cfg.fluid, cfg.body, u);
  };

  double lo = settings.u_min;
  double hi = settings.u_max;
  double f_lo = total(lo);
  const double f_hi = total(hi);
  if (f_lo == 0.0) return {lo, 0.0, 0};
  if (f_hi == 0.0) return {hi, 0.0, 0};
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    std::ostringstream os;
    os << "total force has no sign change on [" << lo << ", " << hi << "] m/s (F = " << f_lo
       << ", " << f_hi << " N); widen the speed bracket";
    throw BracketError(os.str());
  }

  int iter = 0;
  while (true) {
    ++iter;
    const double mid = 0.5 * (lo + hi);
    const double f_mid = total(mid);
    if (std::abs(f_mid) <= settings.tol_force || 0.5 * (hi - lo) <= settings.tol_u ||
        iter >= 200) {
      return {mid, f_mid, iter};
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
}

SolveResult oracle_full_solve(const RobotConfig& cfg, const OracleSettings& settings) {
  const OracleSolution sol = oracle_solve(cfg, settings);
  SolveResult r;
  r.U_X = sol.speed;
  r.F1 = average_thrust(cfg, Role::Anterior, r.U_X, settings);
  r.F2 = average_thrust(cfg, Role::Posterior, r.U_X, settings);
  r.F_body = body_drag(cfg.fluid, cfg.body, r.U_X);
  r.residual = r.F1 + r.F2 + r.F_body;
  r.P1 = oracle_power(cfg, Role::Anterior, r.U_X, settings);
  r.P2 = oracle_power(cfg, Role::Posterior, r.U_X, settings);
  r.P0 = 6.0 * kPi * cfg.fluid.mu * cfg.body.radius * r.U_X * r.U_X;
  finish_result(cfg, r);
  return r;
}

}  // namespace biflag
