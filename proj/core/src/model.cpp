#include "biflag/model.hpp"

#include <cmath>
#include <sstream>

#include "biflag/errors.hpp"

namespace biflag {

const char* to_string(Role role) noexcept {
  return role == Role::Anterior ? "anterior" : "posterior";
}

void FluidMedium::validate() const {
  if (!(std::isfinite(mu) && mu > 0.0)) throw DomainError("fluid viscosity mu must be > 0");
  if (!(std::isfinite(rho) && rho > 0.0)) throw DomainError("fluid density rho must be > 0");
}

void BodyGeometry::validate() const {
  if (!(std::isfinite(radius) && radius >= 0.0)) throw DomainError("body radius a must be >= 0");
  if (!(std::isfinite(mass) && mass > 0.0)) throw DomainError("body mass must be > 0");
}

std::optional<FieldViolation> find_violation(const FlagellumSpec& s) {
  auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!finite_nonneg(s.length)) return FieldViolation{"L", "must be finite and >= 0"};
  if (!(std::isfinite(s.wavelength) && s.wavelength > 0.0))
    return FieldViolation{"lambda", "must be finite and > 0"};
  if (!finite_nonneg(s.frequency)) return FieldViolation{"f", "must be finite and >= 0"};
  if (!(finite_nonneg(s.amplitude) && s.amplitude < 0.5 * s.wavelength))
    return FieldViolation{"A", "must satisfy 0 <= A < lambda/2"};
  if (!(std::isfinite(s.d_membrane) && s.d_membrane > 0.0))
    return FieldViolation{"d_membrane", "must be finite and > 0"};
  if (!(std::isfinite(s.d_hinge) && s.d_hinge > 0.0))
    return FieldViolation{"d_hinge", "must be finite and > 0"};
  if (!finite_nonneg(s.membrane_width)) return FieldViolation{"w", "must be finite and >= 0"};
  if (!finite_nonneg(s.hinge_length)) return FieldViolation{"h", "must be finite and >= 0"};
  if (!finite_nonneg(s.hinge_density)) return FieldViolation{"n", "must be finite and >= 0"};
  if (!slender_body_valid(s.wavelength, s.d_membrane))
    return FieldViolation{"d_membrane", "slender-body validity violated (ln(4 lambda/d) <= 2.90)", true};
  if (!slender_body_valid(s.wavelength, s.d_hinge))
    return FieldViolation{"d_hinge", "slender-body validity violated (ln(4 lambda/d) <= 2.90)", true};
  return std::nullopt;
}

void FlagellumSpec::validate() const {
  if (auto v = find_violation(*this)) {
    std::string msg = std::string(to_string(role)) + "." + v->field + ": " + v->message;
    if (v->singular) throw SingularityError(msg);
    throw DomainError(msg);
  }
}

FlagellumSpec default_flagellum(Role role) {
  FlagellumSpec spec;
  spec.role = role;
  return spec;
}

DerivedShape derived_shape(const FlagellumSpec& spec) noexcept {
  return {spec.amplitude / spec.wavelength, spec.wavelength * spec.frequency,
          2.0 * kPi * spec.frequency};
}

double attachment_x(Role role, double body_radius) noexcept {
  return role == Role::Anterior ? body_radius : -body_radius;
}

double outward_sign(Role role) noexcept { return role == Role::Anterior ? 1.0 : -1.0; }

WaveSample waveform_eval(const FlagellumSpec& spec, double body_radius, double x, double t) {
  // (-1)^k: -1 for the anterior flagellum, +1 for the posterior one.
  const double sk = spec.role == Role::Anterior ? -1.0 : 1.0;
  if (sk * x > -body_radius) {
    std::ostringstream os;
    os << to_string(spec.role) << " waveform evaluated at x = " << x
       << " outside its half-line (body radius " << body_radius << ")";
    throw DomainError(os.str());
  }
  const double k = 2.0 * kPi / spec.wavelength;
  const double omega = 2.0 * kPi * spec.frequency;
  const double phase = sk * omega * t + sk * k * (x + sk * body_radius);
  const double c = std::cos(phase);
  return {spec.amplitude * std::sin(phase), spec.amplitude * sk * k * c,
          spec.amplitude * sk * omega * c};
}

bool slender_body_valid(double wavelength, double diameter) noexcept {
  if (!(wavelength > 0.0 && diameter > 0.0)) return false;
  return std::log(4.0 * wavelength / diameter) > kNormalLogOffset;
}

DragPair brennen_winet(double mu, double wavelength, double diameter) {
  if (!slender_body_valid(wavelength, diameter)) {
    std::ostringstream os;
    os << "drag coefficient singular: ln(4 lambda/d) <= 2.90 for lambda = " << wavelength
       << ", d = " << diameter;
    throw SingularityError(os.str());
  }
  const double log_ratio = std::log(4.0 * wavelength / diameter);
  return {4.0 * kPi * mu / (log_ratio - kNormalLogOffset),
          2.0 * kPi * mu / (log_ratio - kTangentLogOffset)};
}

CompositeDrag composite_coeffs(const FlagellumSpec& spec, const FluidMedium& fluid) {
  const DragPair membrane = brennen_winet(fluid.mu, spec.wavelength, spec.d_membrane);
  const DragPair hinge = brennen_winet(fluid.mu, spec.wavelength, spec.d_hinge);
  const double hinge_factor = spec.hinge_density * spec.hinge_length;
  const double kn = spec.membrane_width * (membrane.normal + hinge_factor * hinge.tangent);
  const double kl = spec.membrane_width * (membrane.tangent + hinge_factor * hinge.normal);
  if (!(kn > 0.0 && kl > 0.0)) {
    throw DomainError("composite drag coefficients must be positive (membrane width w = 0?)");
  }
  return {kn, kl, kl / kn};
}

double reynolds_number(const FluidMedium& fluid, double speed, double char_length) {
  if (!(char_length > 0.0)) throw DomainError("Reynolds number needs a characteristic length > 0");
  return fluid.rho * std::abs(speed) * char_length / fluid.mu;
}

}  // namespace biflag
