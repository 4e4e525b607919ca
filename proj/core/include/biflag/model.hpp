#pragma once

#include <numbers>
#include <optional>
#include <string>

namespace biflag {

inline constexpr double kPi = std::numbers::pi;

/// Offsets in the slender-body drag estimates K = c mu / (ln(4 lambda / d) - offset).
inline constexpr double kNormalLogOffset = 2.90;
inline constexpr double kTangentLogOffset = 1.90;

/// Which end of the body the flagellum is attached to. The value is the index k
/// that sets the sign conventions of the waveform.
enum class Role { Anterior = 1, Posterior = 2 };

const char* to_string(Role role) noexcept;

struct FluidMedium {
  double mu = 1.49;     ///< dynamic viscosity, Pa s
  double rho = 1000.0;  ///< density, kg/m^3

  bool operator==(const FluidMedium&) const = default;

  void validate() const;
};

struct BodyGeometry {
  double radius = 0.035;  ///< effective spherical radius a, m
  double mass = 0.256;    ///< kg

  bool operator==(const BodyGeometry&) const = default;

  void validate() const;
};

/// Geometry and actuation of one flagellum. Lengths in metres, frequency in Hz.
struct FlagellumSpec {
  Role role = Role::Anterior;
  double length = 0.12;
  double amplitude = 0.0075;
  double wavelength = 0.10;
  double frequency = 4.41;
  double d_membrane = 0.016;
  double d_hinge = 0.002;
  double membrane_width = 0.035;
  double hinge_length = 0.016;
  double hinge_density = 200.0;  ///< hinges per metre of flagellum

  bool operator==(const FlagellumSpec&) const = default;

  /// Checks every field invariant, including slender-body validity of both diameters.
  void validate() const;
};

/// A violated invariant, named by the field's config key (L, A, lambda, f, d_membrane, ...).
struct FieldViolation {
  std::string field;
  std::string message;
  bool singular = false;  ///< slender-body validity rather than a plain range check
};

std::optional<FieldViolation> find_violation(const FlagellumSpec& spec);

FlagellumSpec default_flagellum(Role role);

struct DerivedShape {
  double beta;        ///< A / lambda
  double wave_speed;  ///< lambda f, m/s
  double omega;       ///< 2 pi f, rad/s
};

DerivedShape derived_shape(const FlagellumSpec& spec) noexcept;

/// Transverse displacement of the flagellum centreline and its partial derivatives.
struct WaveSample {
  double y;      ///< m
  double slope;  ///< dy/dx
  double y_t;    ///< dy/dt, m/s
};

/// Evaluates the travelling sine wave
///   y = A sin((-1)^k omega t + (-1)^k 2 pi (x + (-1)^k a) / lambda)
/// on the flagellum's half-line (-1)^k x <= -a. Throws DomainError outside it.
WaveSample waveform_eval(const FlagellumSpec& spec, double body_radius, double x, double t);

/// Attachment point and the sign of the outward axial direction for a flagellum.
double attachment_x(Role role, double body_radius) noexcept;
double outward_sign(Role role) noexcept;

struct DragPair {
  double normal;   ///< K_N, per unit length
  double tangent;  ///< K_L, per unit length
};

/// Slender-body estimates of normal and tangential drag coefficients per unit length.
/// Throws SingularityError when ln(4 lambda / d) <= 2.90.
DragPair brennen_winet(double mu, double wavelength, double diameter);

/// True when both drag estimates are finite and positive for this diameter.
bool slender_body_valid(double wavelength, double diameter) noexcept;

/// Effective drag of an assembled flagellum: membrane plus transverse hinges.
struct CompositeDrag {
  double normal;   ///< K_N
  double tangent;  ///< K_L
  double gamma;    ///< K_L / K_N

  CompositeDrag scaled(double factor) const noexcept {
    return {normal * factor, tangent * factor, gamma};
  }
};

/// K_N = w (K_Nm + n h K_Lh), K_L = w (K_Lm + n h K_Nh).
/// The hinges lie across the flagellum, so their tangential coefficient adds to
/// the normal one and vice versa. w multiplies per-length coefficients as-is.
CompositeDrag composite_coeffs(const FlagellumSpec& spec, const FluidMedium& fluid);

/// rho |U| L / mu. Throws DomainError unless char_length > 0.
double reynolds_number(const FluidMedium& fluid, double speed, double char_length);

}  // namespace biflag
