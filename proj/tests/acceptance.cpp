// Acceptance suite: one PASS/FAIL line per criterion. `biflag_acceptance --only N` runs one.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "biflag/calibration.hpp"
#include "biflag/dataset.hpp"
#include "biflag/design_optimizer.hpp"
#include "biflag/oracle.hpp"
#include "biflag/sweep.hpp"
#include "cli.hpp"
#include "support.hpp"

using namespace biflag;
using biflag::testing::random_symmetric_config;
using biflag::testing::rel_diff;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<RobotConfig> random_configs() {
  std::mt19937_64 rng(20240611);
  std::vector<RobotConfig> out;
  for (int i = 0; i < 1000; ++i) out.push_back(random_symmetric_config(rng));
  return out;
}

std::vector<ExperimentalPoint> l12_sweep_points() {
  std::vector<ExperimentalPoint> out;
  for (const ExperimentalPoint& p : builtin_dataset()) {
    if (p.symmetric() && p.length == 0.12 && p.source.rfind("freq_sweep", 0) == 0) out.push_back(p);
  }
  return out;
}

RobotConfig calibrated_default() {
  RobotConfig cfg;
  cfg.thrust_scale = fit_thrust_scale(l12_sweep_points(), cfg, std::nullopt).thrust_scale;
  return cfg;
}

RobotConfig ladder_config(RobotConfig cfg, double beta, double f) {
  for (Role role : {Role::Anterior, Role::Posterior}) {
    FlagellumSpec& fl = cfg.flagellum(role);
    fl.wavelength = 0.1;
    fl.length = 0.1;
    fl.amplitude = beta * fl.wavelength;
    fl.frequency = f;
  }
  return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome algebraic_equivalence() {
  const auto cfgs = random_configs();
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const RobotConfig& c : cfgs) worst = std::max(worst, rel_diff(solve_velocity(c), solve_velocity_unreduced(c)));
  const double dt = seconds_since(t0);
  return {worst <= 1e-12 && dt < 1.0,
          "max rel diff " + fmt("%.2e", worst) + " over 1000 configs (tol 1e-12), " + fmt("%.3f", dt) + " s (< 1 s)"};
}

Outcome root_property() {
  const auto cfgs = random_configs();
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const RobotConfig& c : cfgs) {
    const SolveResult r = full_solve(c);
    const double scale = std::max({std::abs(r.F1), std::abs(r.F2), std::abs(r.F_body)});
    if (scale > 0.0) worst = std::max(worst, std::abs(r.residual) / scale);
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-10 && dt < 1.0,
          "max relative residual " + fmt("%.2e", worst) + " (tol 1e-10), " + fmt("%.3f", dt) + " s (< 1 s)"};
}

Outcome oracle_ladder() {
  const RobotConfig base = calibrated_default();
  const double betas[] = {0.04, 0.08, 0.12};
  const double tols[] = {0.01, 0.02, 0.05};
  const double freqs[] = {2.05, 4.41, 5.28};
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream os;
  os << "thrust_scale " << fmt("%.4f", base.thrust_scale) << ", L = lambda = 0.1 m;";
  for (int b = 0; b < 3; ++b) {
    double worst = 0.0;
    for (double f : freqs) {
      const RobotConfig cfg = ladder_config(base, betas[b], f);
      worst = std::max(worst, std::abs(oracle_solve(cfg).speed - solve_velocity(cfg)) / std::abs(solve_velocity(cfg)));
    }
    pass = pass && worst <= tols[b];
    os << " beta " << betas[b] << ": " << fmt("%.3f%%", 100 * worst) << " (<= " << 100 * tols[b] << "%);";
  }
  const double dt = seconds_since(t0);
  os << " " << fmt("%.2f", dt) << " s (< 30 s)";
  return {pass && dt < 30.0, os.str()};
}

Outcome power_cross_check() {
  bool pass = true;
  std::ostringstream os;
  for (double beta : {0.04, 0.06, 0.08}) {
    const RobotConfig cfg = ladder_config(RobotConfig{}, beta, 4.41);
    const double u = solve_velocity(cfg);
    const Powers p = powers(cfg, u);
    const double e1 = rel_diff(oracle_power(cfg, Role::Anterior, u), p.anterior);
    const double e2 = rel_diff(oracle_power(cfg, Role::Posterior, u), p.posterior);
    const double eta = rel_diff(oracle_full_solve(cfg).eta, full_solve(cfg).eta);
    pass = pass && e1 <= 0.03 && e2 <= 0.03 && eta <= 0.05;
    os << "beta " << beta << ": P1 " << fmt("%.2f%%", 100 * e1) << ", P2 " << fmt("%.2f%%", 100 * e2)
       << " (<= 3%), eta " << fmt("%.2f%%", 100 * eta) << " (<= 5%); ";
  }
  return {pass, os.str()};
}

Outcome efficiency_peak() {
  const auto t0 = std::chrono::steady_clock::now();
  HeatmapSpec spec;
  spec.f1_start = spec.f2_start = 0.5;
  spec.f1_stop = spec.f2_stop = 6.0;
  spec.f1_count = spec.f2_count = 41;
  spec.output = Output::Eta;
  const Heatmap h = heatmap(RobotConfig{}, spec);
  int bad = 0;
  int first_bad = -1;
  for (int s = 0; s <= 80; ++s) {
    int best_i = -1;
    double best = -INFINITY;
    for (int i = std::max(0, s - 40); i <= std::min(40, s); ++i) {
      const double v = h.at(i, s - i);
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    // Nearest f1 = f2: |i - j| = 0 for even sums, 1 for odd.
    if (std::abs(2 * best_i - s) > (s % 2)) {
      ++bad;
      if (first_bad < 0) first_bad = s;
    }
  }
  const double dt = seconds_since(t0);
  std::string detail = std::to_string(81 - bad) + "/81 anti-diagonals peak at the central point";
  if (bad) detail += " (first miss at index sum " + std::to_string(first_bad) + ")";
  return {bad == 0 && dt < 10.0, detail + ", " + fmt("%.2f", dt) + " s (< 10 s)"};
}

Outcome speed_symmetry() {
  HeatmapSpec spec;
  spec.f1_start = spec.f2_start = 0.0;
  spec.f1_stop = spec.f2_stop = 6.0;
  spec.f1_count = spec.f2_count = 21;
  const Heatmap h = heatmap(RobotConfig{}, spec);
  double umax = 0.0;
  for (double v : h.values) umax = std::max(umax, std::abs(v));
  double sym = 0.0, lin = 0.0;
  for (int i = 0; i < 21; ++i) {
    for (int j = 0; j < 21; ++j) {
      sym = std::max(sym, std::abs(h.at(i, j) - h.at(j, i)) / umax);
      // Same f1 + f2 on the anti-diagonal: compare with the cell in row max(0, s - 20).
      const int s = i + j;
      const int i0 = std::max(0, s - 20);
      lin = std::max(lin, std::abs(h.at(i, j) - h.at(i0, s - i0)) / umax);
    }
  }
  return {sym <= 1e-12 && lin <= 1e-12,
          "transpose " + fmt("%.2e", sym) + ", sum dependence " + fmt("%.2e", lin) + " (tol 1e-12, relative to max |U|)"};
}

Outcome monotonic_trends() {
  const RobotConfig cfg = calibrated_default();
  SweepSpec fs;
  fs.axis = SweepAxis::FSym;
  fs.start = 0.0;
  fs.stop = 5.28;
  fs.count = 133;
  fs.outputs = {Output::U_X};
  const auto u = sweep(cfg, fs).column("U_m_s");
  bool nondecreasing = true;
  for (std::size_t i = 1; i < u.size(); ++i) nondecreasing = nondecreasing && u[i] >= u[i - 1];

  std::vector<double> ul;
  for (double l : {0.065, 0.10, 0.12}) {
    SweepSpec ls;
    ls.axis = SweepAxis::Length;
    ls.start = ls.stop = l;
    ls.coupling = default_amplitude_coupling();
    ls.outputs = {Output::U_X};
    ul.push_back(sweep(cfg, ls).column("U_m_s")[0]);
  }
  const bool increasing = ul[0] < ul[1] && ul[1] < ul[2];
  return {nondecreasing && increasing,
          std::string("f sweep 0..5.28 Hz ") + (nondecreasing ? "non-decreasing" : "NOT monotone") +
              "; L 6.5/10/12 cm -> " + fmt("%.4f", 100 * ul[0]) + " / " + fmt("%.4f", 100 * ul[1]) + " / " +
              fmt("%.4f", 100 * ul[2]) + " cm/s"};
}

Outcome desk_scale_reproduction() {
  const auto pts = l12_sweep_points();
  const CalibrationResult fit = fit_thrust_scale(pts, RobotConfig{}, std::nullopt);
  RobotConfig cfg;
  cfg.thrust_scale = fit.thrust_scale;

  const AmplitudeCoupling coupling = default_amplitude_coupling();
  std::vector<double> model, data;
  for (const ExperimentalPoint& p : builtin_dataset()) {
    if (p.symmetric() && p.f1 == 4.41 && p.source.find("length_sweep") != std::string::npos) {
      model.push_back(predicted_speed(cfg, p, coupling));
      data.push_back(p.speed);
    }
  }
  // Sort both by experimental speed and check the model agrees.
  std::vector<std::size_t> idx(model.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return data[a] < data[b]; });
  bool ordered = model.size() == 3;
  for (std::size_t k = 1; k < idx.size(); ++k) ordered = ordered && model[idx[k]] > model[idx[k - 1]];
  const double ratio = model.size() == 3 ? model[idx[2]] / model[idx[0]] : 0.0;

  const double cot = cost_of_transport(9.82, 0.256, 0.0309);
  const double cot_ref = 9.82 / (0.256 * 9.81 * 0.0309);
  const bool cot_ok = std::abs(cot - cot_ref) <= 1e-12 * cot_ref && std::abs(cot - 126.6) < 0.1;

  const bool pass = pts.size() == 3 && fit.max_rel_error <= 0.30 && ordered && ratio >= 2.5 && ratio <= 5.0 && cot_ok;
  return {pass, "3-point fit scale " + fmt("%.4f", fit.thrust_scale) + ", max residual " +
                    fmt("%.1f%%", 100 * fit.max_rel_error) + " (<= 30%); length ordering " +
                    (ordered ? "preserved" : "BROKEN") + ", U(12)/U(6.5) = " + fmt("%.3f", ratio) +
                    " (in [2.5, 5]); CoT(9.82 W, 0.256 kg, 3.09 cm/s) = " + fmt("%.4f", cot)};
}

Outcome calibration_round_trip() {
  const AmplitudeCoupling coupling = default_amplitude_coupling();
  double worst = 0.0;
  for (double scale : {0.5, 1.0, 2.0}) {
    RobotConfig gen;
    gen.thrust_scale = scale;
    std::vector<ExperimentalPoint> pts = symmetric_points(builtin_dataset());
    for (ExperimentalPoint& p : pts) p.speed = predicted_speed(gen, p, coupling);
    const double got = fit_thrust_scale(pts, RobotConfig{}, coupling).thrust_scale;
    worst = std::max(worst, std::abs(got - scale) / scale);
  }
  return {worst <= 1e-3, "max relative scale error " + fmt("%.2e", worst) + " (tol 1e-3)"};
}

// Best objective over a 201-point-per-axis tensor grid, evaluated on all cores.
double brute_force(const RobotConfig& cfg, const DesignBounds& bounds, Objective obj) {
  const auto axes = search_axes(bounds);
  const int n = 201;
  std::size_t total = 1;
  for (std::size_t k = 0; k < axes.size(); ++k) total *= n;
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<double> best(threads, -INFINITY);
  std::atomic<std::size_t> next{0};
  auto work = [&](unsigned t) {
    std::vector<double> vals(axes.size());
    for (std::size_t idx = next++; idx < total; idx = next++) {
      std::size_t rem = idx;
      for (std::size_t k = 0; k < axes.size(); ++k) {
        const int i = static_cast<int>(rem % n);
        rem /= n;
        const Interval& r = axes[k].range;
        vals[k] = i == n - 1 ? r.hi : r.lo + (r.hi - r.lo) * i / (n - 1);
      }
      best[t] = std::max(best[t], evaluate_objective(apply_design(cfg, bounds, axes, vals), obj));
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  for (auto& th : pool) th.join();
  return *std::max_element(best.begin(), best.end());
}

Outcome optimizer_vs_brute_force() {
  std::mt19937_64 rng(77);
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto sub = [&](double lo, double hi) {
    const double a = uni(lo, hi), b = uni(lo, hi);
    return Interval{std::min(a, b), std::max(a, b)};
  };
  const auto t0 = std::chrono::steady_clock::now();
  double worst_gap = -INFINITY;
  std::ostringstream os;
  int fails = 0;
  for (int trial = 0; trial < 10; ++trial) {
    DesignBounds b;
    const DesignParam params[] = {DesignParam::F1, DesignParam::F2, DesignParam::Length, DesignParam::Amplitude,
                                  DesignParam::Wavelength};
    std::vector<int> pick = {0, 1, 2, 3, 4};
    std::shuffle(pick.begin(), pick.end(), rng);
    const int n_axes = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n_axes; ++k) {
      switch (params[pick[k]]) {
        case DesignParam::F1: b.set(DesignParam::F1, sub(0.2, 7.0)); break;
        case DesignParam::F2: b.set(DesignParam::F2, sub(0.2, 7.0)); break;
        case DesignParam::Length: b.set(DesignParam::Length, sub(0.03, 0.3)); break;
        case DesignParam::Amplitude: b.set(DesignParam::Amplitude, sub(0.0, 0.02)); break;
        case DesignParam::Wavelength: b.set(DesignParam::Wavelength, sub(0.08, 0.2)); break;
      }
    }
    if (trial % 4 == 3) b.frequency_sum = uni(2.0, 10.0);
    const Objective obj = trial % 2 ? Objective::Efficiency : Objective::Speed;
    const OptimizationResult r = optimize_design(RobotConfig{}, b, obj);
    const double grid = brute_force(RobotConfig{}, b, obj);
    const double gap = grid - r.value;  // > 0 means the grid found something better
    worst_gap = std::max(worst_gap, gap);
    if (gap > 1e-9) ++fails;
  }
  const double dt = seconds_since(t0);
  os << (10 - fails) << "/10 bound sets with optimizer >= grid best - 1e-9 (worst grid - optimizer "
     << fmt("%.2e", worst_gap) << "), " << fmt("%.2f", dt) << " s (< 60 s)";
  return {fails == 0 && dt < 60.0, os.str()};
}

Outcome oracle_convergence() {
  const RobotConfig cfg;
  auto speed = [&](int n, int m) {
    OracleSettings s;
    s.n_segments = n;
    s.n_time = m;
    return oracle_solve(cfg, s).speed;
  };
  const double u1 = speed(16, 8), u2 = speed(32, 16), u3 = speed(64, 32);
  const double d1 = std::abs(u2 - u1), d2 = std::abs(u3 - u2);
  const bool pass = d1 > 0.0 && d2 * 3.0 <= d1;
  return {pass, "speed change 16x8->32x16 " + fmt("%.2e", d1) + ", 32x16->64x32 " + fmt("%.2e", d2) +
                    " (reduction " + (d2 > 0 ? fmt("%.3g", d1 / d2) : std::string("inf")) + "x, need >= 3x)"};
}

Outcome cli_contract() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "biflag_acceptance_cli";
  fs::remove_all(dir);
  struct Job {
    std::vector<std::string> args;
    std::vector<std::string> files;  // written by the command, besides stdout
  };
  auto path = [&](int run, const std::string& name) { return (dir / (std::to_string(run) + "_" + name)).string(); };
  auto jobs = [&](int run) {
    return std::vector<Job>{
        {{"solve", "--config", "default"}, {}},
        {{"sweep", "--config", "default", "--axis", "f_sym", "--from", "0", "--to", "6", "--count", "61", "--out",
          path(run, "sweep.csv"), "--plot", path(run, "sweep.svg")},
         {path(run, "sweep.csv"), path(run, "sweep.svg")}},
        {{"heatmap", "--config", "default", "--output", "eta", "--out", path(run, "heat.csv")}, {path(run, "heat.csv")}},
        {{"oracle-check", "--config", "default"}, {}},
        {{"calibrate", "--config", "default"}, {}},
        {{"optimize", "--config", "default", "--objective", "efficiency", "--constraint-sum", "8.82"}, {}},
    };
  };
  fs::create_directories(dir);
  std::vector<std::string> outputs[2];
  std::ostringstream os;
  bool pass = true;
  for (int run = 0; run < 2; ++run) {
    for (const Job& job : jobs(run)) {
      std::ostringstream out, err;
      const int code = cli::run(job.args, out, err);
      if (code != 0) {
        pass = false;
        os << job.args[0] << " exited " << code << " (" << err.str() << "); ";
      }
      outputs[run].push_back(out.str());
      for (const std::string& f : job.files) {
        std::ifstream in(f, std::ios::binary);
        outputs[run].emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        if (outputs[run].back().empty()) {
          pass = false;
          os << f << " empty; ";
        }
      }
    }
  }
  const bool identical = outputs[0] == outputs[1];
  os << "6 subcommands, " << outputs[0].size() << " artifacts (JSON/CSV/SVG) "
     << (identical ? "byte-identical" : "DIFFER") << " across two runs";
  return {pass && identical, os.str()};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "algebraic equivalence", algebraic_equivalence},
      {2, "force-balance root property", root_property},
      {3, "oracle speed ladder", oracle_ladder},
      {4, "power cross-check", power_cross_check},
      {5, "efficiency peak on the diagonal", efficiency_peak},
      {6, "speed symmetry and linearity", speed_symmetry},
      {7, "monotonic trends", monotonic_trends},
      {8, "desk-scale reproduction", desk_scale_reproduction},
      {9, "calibration round-trip", calibration_round_trip},
      {10, "optimizer vs brute force", optimizer_vs_brute_force},
      {11, "oracle convergence", oracle_convergence},
      {12, "CLI contract", cli_contract},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: biflag_acceptance [--only N]\n");
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const Criterion& c : criteria) {
    if (only && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed ? 1 : 0;
}
