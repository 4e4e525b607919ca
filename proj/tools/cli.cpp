#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "biflag/calibration.hpp"
#include "biflag/config.hpp"
#include "biflag/dataset.hpp"
#include "biflag/design_optimizer.hpp"
#include "biflag/errors.hpp"
#include "biflag/output.hpp"
#include "biflag/plot.hpp"
#include "biflag/sweep.hpp"
#include "biflag/units.hpp"
#include "json.hpp"

namespace biflag::cli {
namespace {

using nlohmann::ordered_json;

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json result_json(const SolveResult& r) { return ordered_json::parse(solve_result_json(r)); }

LoadedConfig resolve_config(const std::string& spec) {
  if (spec == "default") return LoadedConfig{};
  return load_config(spec);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Dimension axis_dimension(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::FSym:
    case SweepAxis::F1:
    case SweepAxis::F2: return Dimension::Frequency;
    default: return Dimension::Length;
  }
}

Dimension param_dimension(DesignParam p) {
  return p == DesignParam::F1 || p == DesignParam::F2 ? Dimension::Frequency : Dimension::Length;
}

std::string param_key(DesignParam p) {
  return std::string(to_string(p)) + (param_dimension(p) == Dimension::Frequency ? "_hz" : "_m");
}

// "f1=0:6,L=6.5cm:12cm"
DesignBounds parse_bounds(const std::string& text) {
  DesignBounds bounds;
  for (const std::string& item : split(text, ',')) {
    const auto eq = item.find('=');
    const auto colon = item.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos) {
      throw DomainError("malformed bound '" + item + "' (expected name=lo:hi)");
    }
    const DesignParam p = parse_design_param(item.substr(0, eq));
    const Dimension dim = param_dimension(p);
    bounds.set(p, {parse_quantity(item.substr(eq + 1, colon - eq - 1), dim),
                   parse_quantity(item.substr(colon + 1), dim)});
  }
  return bounds;
}

void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string csv_text(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

struct Common {
  std::string config = "default";
  std::string backend = "closed_form";
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool backend, bool out) {
  cmd->add_option("--config", c.config, "JSON config file, or 'default'")->capture_default_str();
  if (backend) {
    cmd->add_option("--backend", c.backend, "closed_form or oracle")->capture_default_str();
  }
  if (out) cmd->add_option("--out", c.out, "output file (stdout when omitted)");
}

int run_solve(const Common& c, std::ostream& out) {
  const LoadedConfig cfg = resolve_config(c.config);
  const SolveResult r = evaluate(cfg.robot, parse_backend(c.backend), cfg.oracle);
  emit(out, c.out, solve_result_json(r) + "\n");
  return kExitOk;
}

struct SweepArgs {
  std::string axis;
  std::string from = "0";
  std::string to = "0";
  int count = 1;
  std::string outputs;
  bool coupling = false;
  std::string plot;
};

int run_sweep(const Common& c, const SweepArgs& a, std::ostream& out) {
  const LoadedConfig cfg = resolve_config(c.config);
  SweepSpec spec;
  spec.axis = parse_sweep_axis(a.axis);
  spec.start = parse_quantity(a.from, axis_dimension(spec.axis));
  spec.stop = parse_quantity(a.to, axis_dimension(spec.axis));
  spec.count = a.count;
  spec.backend = parse_backend(c.backend);
  spec.oracle = cfg.oracle;
  if (a.coupling) spec.coupling = default_amplitude_coupling();
  if (!a.outputs.empty()) {
    spec.outputs.clear();
    for (const std::string& name : split(a.outputs, ',')) spec.outputs.push_back(parse_output(name));
  }
  const Table table = sweep(cfg.robot, spec);
  if (!a.plot.empty()) {
    emit_plot(table, table.columns.front(), spec.outputs.size() == 1 ? table.columns[1] : "value",
              a.plot);
  }
  emit(out, c.out, csv_text(table));
  return kExitOk;
}

struct HeatmapArgs {
  std::string f1_from = "0.5", f1_to = "6";
  std::string f2_from = "0.5", f2_to = "6";
  int f1_count = 41, f2_count = 41;
  std::string output = "U_X";
};

int run_heatmap(const Common& c, const HeatmapArgs& a, std::ostream& out) {
  const LoadedConfig cfg = resolve_config(c.config);
  HeatmapSpec spec;
  spec.f1_start = parse_quantity(a.f1_from, Dimension::Frequency);
  spec.f1_stop = parse_quantity(a.f1_to, Dimension::Frequency);
  spec.f1_count = a.f1_count;
  spec.f2_start = parse_quantity(a.f2_from, Dimension::Frequency);
  spec.f2_stop = parse_quantity(a.f2_to, Dimension::Frequency);
  spec.f2_count = a.f2_count;
  spec.output = parse_output(a.output);
  spec.backend = parse_backend(c.backend);
  spec.oracle = cfg.oracle;
  emit(out, c.out, csv_text(heatmap(cfg.robot, spec).to_table()));
  return kExitOk;
}

int run_oracle_check(const Common& c, std::ostream& out) {
  const LoadedConfig cfg = resolve_config(c.config);
  const double betas[] = {0.04, 0.075, 0.08, 0.12};
  const double freqs[] = {2.05, 4.41, 5.28};

  ordered_json cases = ordered_json::array();
  std::map<double, double> worst;
  double overall = 0.0;
  for (double beta : betas) {
    for (double f : freqs) {
      RobotConfig point = cfg.robot;
      for (Role role : {Role::Anterior, Role::Posterior}) {
        FlagellumSpec& fl = point.flagellum(role);
        fl.amplitude = beta * fl.wavelength;
        fl.frequency = f;
      }
      const double closed = solve_velocity(point);
      const double numeric = oracle_solve(point, cfg.oracle).speed;
      const double rel = std::abs(numeric - closed) / std::abs(closed);
      worst[beta] = std::max(worst[beta], rel);
      overall = std::max(overall, rel);
      cases.push_back({{"beta", beta},
                       {"f_hz", f},
                       {"U_closed_m_s", num(closed)},
                       {"U_oracle_m_s", num(numeric)},
                       {"rel_diff", num(rel)}});
    }
  }
  ordered_json report;
  report["L_m"] = cfg.robot.anterior.length;
  report["lambda_m"] = cfg.robot.anterior.wavelength;
  report["thrust_scale"] = cfg.robot.thrust_scale;
  report["n_segments"] = cfg.oracle.n_segments;
  report["n_time"] = cfg.oracle.n_time;
  report["cases"] = cases;
  ordered_json by_beta = ordered_json::array();
  for (const auto& [beta, rel] : worst) by_beta.push_back({{"beta", beta}, {"max_rel_diff", num(rel)}});
  report["max_rel_diff_by_beta"] = by_beta;
  report["max_rel_diff"] = num(overall);
  emit(out, c.out, report.dump(2) + "\n");
  return kExitOk;
}

struct CalibrateArgs {
  std::string dataset;
  std::string subset = "symmetric";
  bool no_coupling = false;
};

int run_calibrate(const Common& c, const CalibrateArgs& a, std::ostream& out) {
  const LoadedConfig cfg = resolve_config(c.config);
  std::vector<ExperimentalPoint> points = a.dataset.empty() ? builtin_dataset() : load_dataset_csv(a.dataset);
  if (a.subset == "symmetric") {
    points = symmetric_points(points);
  } else if (a.subset == "frequency") {
    points = symmetric_points(points);
    const double l_ref = cfg.robot.anterior.length;
    std::erase_if(points, [&](const ExperimentalPoint& p) { return std::abs(p.length - l_ref) > 1e-12; });
  } else if (a.subset != "all") {
    throw DomainError("unknown subset '" + a.subset + "' (expected symmetric, frequency, all)");
  }
  std::optional<AmplitudeCoupling> coupling;
  if (!a.no_coupling) coupling = default_amplitude_coupling();

  const CalibrationResult fit = fit_thrust_scale(points, cfg.robot, coupling);
  RobotConfig fitted = cfg.robot;
  fitted.thrust_scale = fit.thrust_scale;

  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ExperimentalPoint& p = points[i];
    rows.push_back({{"L_m", p.length},
                    {"f1_hz", p.f1},
                    {"f2_hz", p.f2},
                    {"speed_m_s", p.speed},
                    {"predicted_m_s", num(predicted_speed(fitted, p, coupling))},
                    {"residual", num(fit.residuals[i])},
                    {"source", p.source}});
  }
  ordered_json report;
  report["thrust_scale"] = num(fit.thrust_scale);
  report["max_rel_error"] = num(fit.max_rel_error);
  report["amplitude_coupling"] = coupling.has_value();
  report["points"] = rows;
  emit(out, c.out, report.dump(2) + "\n");
  return kExitOk;
}

struct OptimizeArgs {
  std::string objective = "speed";
  std::string bounds = "f1=0.5:6,f2=0.5:6";
  std::optional<std::string> constraint_sum;
};

int run_optimize(const Common& c, const OptimizeArgs& a, std::ostream& out) {
  const LoadedConfig cfg = resolve_config(c.config);
  DesignBounds bounds = parse_bounds(a.bounds);
  if (a.constraint_sum) bounds.frequency_sum = parse_quantity(*a.constraint_sum, Dimension::Frequency);
  const Objective objective = parse_objective(a.objective);
  const OptimizationResult best = optimize_design(cfg.robot, bounds, objective);

  ordered_json params;
  for (const auto& [p, v] : best.params) params[param_key(p)] = v;
  ordered_json report;
  report["objective"] = to_string(objective);
  report["value"] = num(best.value);
  report["coarse_value"] = num(best.coarse_value);
  report["evaluations"] = best.evaluations;
  report["sweeps"] = best.sweeps;
  report["params"] = params;
  report["result"] = result_json(full_solve(best.config));
  emit(out, c.out, report.dump(2) + "\n");
  return kExitOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biflagellated swimmer model: closed-form and numerical RFT tools", "biflag"};
  app.require_subcommand(1);

  Common solve_c, sweep_c, heat_c, oracle_c, calib_c, opt_c;
  SweepArgs sweep_a;
  HeatmapArgs heat_a;
  CalibrateArgs calib_a;
  OptimizeArgs opt_a;

  auto* solve_cmd = app.add_subcommand("solve", "Solve one configuration, JSON to stdout");
  add_common(solve_cmd, solve_c, true, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "1-D parameter sweep, CSV");
  add_common(sweep_cmd, sweep_c, true, true);
  sweep_cmd->add_option("--axis", sweep_a.axis, "f_sym, f1, f2, L, lambda, A")->required();
  sweep_cmd->add_option("--from", sweep_a.from, "start (units: hz, m, cm, mm)")->capture_default_str();
  sweep_cmd->add_option("--to", sweep_a.to, "stop")->capture_default_str();
  sweep_cmd->add_option("--count", sweep_a.count, "grid points, endpoints included")->capture_default_str();
  sweep_cmd->add_option("--outputs", sweep_a.outputs, "comma list of U_X,P1,P2,P0,eta,CoT,Re");
  sweep_cmd->add_flag("--coupling", sweep_a.coupling, "amplitude follows length (axis L)");
  sweep_cmd->add_option("--plot", sweep_a.plot, "also write an SVG line plot");

  auto* heat_cmd = app.add_subcommand("heatmap", "f1 x f2 grid, long-form CSV");
  add_common(heat_cmd, heat_c, true, true);
  heat_cmd->add_option("--f1-from", heat_a.f1_from)->capture_default_str();
  heat_cmd->add_option("--f1-to", heat_a.f1_to)->capture_default_str();
  heat_cmd->add_option("--f1-count", heat_a.f1_count)->capture_default_str();
  heat_cmd->add_option("--f2-from", heat_a.f2_from)->capture_default_str();
  heat_cmd->add_option("--f2-to", heat_a.f2_to)->capture_default_str();
  heat_cmd->add_option("--f2-count", heat_a.f2_count)->capture_default_str();
  heat_cmd->add_option("--output", heat_a.output, "U_X or eta")->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Closed form vs numerical RFT, JSON report");
  add_common(oracle_cmd, oracle_c, false, true);

  auto* calib_cmd = app.add_subcommand("calibrate", "Fit thrust_scale to speed data, JSON report");
  add_common(calib_cmd, calib_c, false, true);
  calib_cmd->add_option("--dataset", calib_a.dataset, "CSV dataset (built-in data when omitted)");
  calib_cmd->add_option("--subset", calib_a.subset, "symmetric, frequency or all")->capture_default_str();
  calib_cmd->add_flag("--no-coupling", calib_a.no_coupling, "keep the config amplitude for every length");

  auto* opt_cmd = app.add_subcommand("optimize", "Maximise speed or efficiency, JSON report");
  add_common(opt_cmd, opt_c, false, true);
  opt_cmd->add_option("--objective", opt_a.objective, "speed or efficiency")->capture_default_str();
  opt_cmd->add_option("--bounds", opt_a.bounds, "e.g. f1=0:6,f2=0:6,L=6.5cm:12cm")->capture_default_str();
  opt_cmd->add_option("--constraint-sum", opt_a.constraint_sum, "enforce f1 + f2 = value");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << "\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (*solve_cmd) return run_solve(solve_c, out);
    if (*sweep_cmd) return run_sweep(sweep_c, sweep_a, out);
    if (*heat_cmd) return run_heatmap(heat_c, heat_a, out);
    if (*oracle_cmd) return run_oracle_check(oracle_c, out);
    if (*calib_cmd) return run_calibrate(calib_c, calib_a, out);
    if (*opt_cmd) return run_optimize(opt_c, opt_a, out);
  } catch (const NumericalError& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitNumerical;
  }
  return kExitInvalid;
}

}  // namespace biflag::cli
