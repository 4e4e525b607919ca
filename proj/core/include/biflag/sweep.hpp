#pragma once

#include <optional>
#include <string>
#include <vector>

#include "biflag/closed_form.hpp"
#include "biflag/dataset.hpp"
#include "biflag/oracle.hpp"
#include "biflag/table.hpp"

namespace biflag {

/// Swept parameter. Frequencies and geometry (L, lambda, A) are applied to both flagella,
/// except F1 and F2 which move one flagellum only.
enum class SweepAxis { FSym, F1, F2, Length, Wavelength, Amplitude };

const char* to_string(SweepAxis axis) noexcept;     ///< f_sym, f1, f2, L, lambda, A
const char* axis_column(SweepAxis axis) noexcept;   ///< f_hz, f1_hz, f2_hz, L_m, lambda_m, A_m
SweepAxis parse_sweep_axis(const std::string& name);

enum class Backend { ClosedForm, Oracle };

const char* to_string(Backend b) noexcept;  ///< closed_form, oracle
Backend parse_backend(const std::string& name);

enum class Output { U_X, P1, P2, P0, Eta, CoT, Re };

const char* to_string(Output o) noexcept;      ///< U_X, P1, P2, P0, eta, CoT, Re
const char* output_column(Output o) noexcept;  ///< U_m_s, P1_W, P2_W, P0_W, eta, CoT, Re
Output parse_output(const std::string& name);
std::vector<Output> all_outputs();
double output_value(const SolveResult& r, Output o);

struct SweepSpec {
  SweepAxis axis = SweepAxis::FSym;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  Backend backend = Backend::ClosedForm;
  std::optional<AmplitudeCoupling> coupling;  ///< amplitude follows length; axis L only
  std::vector<Output> outputs = all_outputs();
  OracleSettings oracle;

  void validate() const;
};

/// count points from start to stop inclusive; a single point sits at start.
std::vector<double> linspace(double start, double stop, int count);

/// Copy of cfg with the axis value (and coupled amplitude) applied.
RobotConfig apply_axis(const RobotConfig& cfg, SweepAxis axis, double value,
                       const AmplitudeCoupling* coupling = nullptr);

SolveResult evaluate(const RobotConfig& cfg, Backend backend, const OracleSettings& oracle);

/// One row per grid point in ascending axis order: axis value, then the requested outputs.
/// Any failing point aborts the whole sweep with an error naming that point.
Table sweep(const RobotConfig& cfg, const SweepSpec& spec);

struct HeatmapSpec {
  double f1_start = 0.0;
  double f1_stop = 0.0;
  int f1_count = 1;
  double f2_start = 0.0;
  double f2_stop = 0.0;
  int f2_count = 1;
  Output output = Output::U_X;  ///< U_X or Eta
  Backend backend = Backend::ClosedForm;
  OracleSettings oracle;

  void validate() const;
};

struct Heatmap {
  std::vector<double> f1;
  std::vector<double> f2;
  std::vector<double> values;  ///< row-major, values[i * f2.size() + j] at (f1[i], f2[j])
  Output output = Output::U_X;

  double at(std::size_t i, std::size_t j) const { return values[i * f2.size() + j]; }
  /// Long form: f1_hz, f2_hz, <output column>, f1 outer, f2 inner.
  Table to_table() const;
};

Heatmap heatmap(const RobotConfig& cfg, const HeatmapSpec& spec);

/// Worker threads for n independent jobs: hardware concurrency, capped by BIFLAG_THREADS.
unsigned worker_count(std::size_t jobs);

}  // namespace biflag
