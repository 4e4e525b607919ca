#include "biflag/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "biflag/errors.hpp"
#include "biflag/output.hpp"

namespace biflag {
namespace {

constexpr SweepAxis kAxes[] = {SweepAxis::FSym,   SweepAxis::F1,         SweepAxis::F2,
                               SweepAxis::Length, SweepAxis::Wavelength, SweepAxis::Amplitude};
constexpr Output kOutputs[] = {Output::U_X, Output::P1,  Output::P2, Output::P0,
                               Output::Eta, Output::CoT, Output::Re};
constexpr Backend kBackends[] = {Backend::ClosedForm, Backend::Oracle};

void check_range(const char* what, double start, double stop, int count) {
  if (!(std::isfinite(start) && std::isfinite(stop))) {
    throw DomainError(std::string(what) + " range must be finite");
  }
  if (start > stop) throw DomainError(std::string(what) + " range needs start <= stop");
  if (count < 1) throw DomainError(std::string(what) + " count must be >= 1");
}

// Runs job(i) for i in [0, n) on a small thread pool. Every index is attempted; the
// error from the lowest failing index is rethrown so failures are reproducible.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = worker_count(n);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

[[noreturn]] void rethrow_at(const std::string& where) {
  try {
    throw;
  } catch (const SingularityError& e) {
    throw SingularityError(where + ": " + e.what());
  } catch (const AsymmetryError& e) {
    throw AsymmetryError(where + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(where + ": " + e.what());
  } catch (const BracketError& e) {
    throw BracketError(where + ": " + e.what());
  } catch (const Error& e) {
    throw NumericalError(where + ": " + e.what());
  }
}

}  // namespace

const char* to_string(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::FSym: return "f_sym";
    case SweepAxis::F1: return "f1";
    case SweepAxis::F2: return "f2";
    case SweepAxis::Length: return "L";
    case SweepAxis::Wavelength: return "lambda";
    case SweepAxis::Amplitude: return "A";
  }
  return "?";
}

const char* axis_column(SweepAxis axis) noexcept {
  switch (axis) {
    case SweepAxis::FSym: return "f_hz";
    case SweepAxis::F1: return "f1_hz";
    case SweepAxis::F2: return "f2_hz";
    case SweepAxis::Length: return "L_m";
    case SweepAxis::Wavelength: return "lambda_m";
    case SweepAxis::Amplitude: return "A_m";
  }
  return "?";
}

SweepAxis parse_sweep_axis(const std::string& name) {
  for (SweepAxis a : kAxes) {
    if (name == to_string(a)) return a;
  }
  throw DomainError("unknown sweep axis '" + name + "' (expected f_sym, f1, f2, L, lambda, A)");
}

const char* to_string(Backend b) noexcept {
  return b == Backend::ClosedForm ? "closed_form" : "oracle";
}

Backend parse_backend(const std::string& name) {
  for (Backend b : kBackends) {
    if (name == to_string(b)) return b;
  }
  throw DomainError("unknown backend '" + name + "' (expected closed_form or oracle)");
}

const char* to_string(Output o) noexcept {
  switch (o) {
    case Output::U_X: return "U_X";
    case Output::P1: return "P1";
    case Output::P2: return "P2";
    case Output::P0: return "P0";
    case Output::Eta: return "eta";
    case Output::CoT: return "CoT";
    case Output::Re: return "Re";
  }
  return "?";
}

const char* output_column(Output o) noexcept {
  switch (o) {
    case Output::U_X: return "U_m_s";
    case Output::P1: return "P1_W";
    case Output::P2: return "P2_W";
    case Output::P0: return "P0_W";
    case Output::Eta: return "eta";
    case Output::CoT: return "CoT";
    case Output::Re: return "Re";
  }
  return "?";
}

Output parse_output(const std::string& name) {
  for (Output o : kOutputs) {
    if (name == to_string(o)) return o;
  }
  throw DomainError("unknown output '" + name + "' (expected U_X, P1, P2, P0, eta, CoT, Re)");
}

std::vector<Output> all_outputs() { return {std::begin(kOutputs), std::end(kOutputs)}; }

double output_value(const SolveResult& r, Output o) {
  switch (o) {
    case Output::U_X: return r.U_X;
    case Output::P1: return r.P1;
    case Output::P2: return r.P2;
    case Output::P0: return r.P0;
    case Output::Eta: return r.eta;
    case Output::CoT: return r.CoT;
    case Output::Re: return r.Re;
  }
  return 0.0;
}

void SweepSpec::validate() const {
  check_range("sweep", start, stop, count);
  if (coupling && axis != SweepAxis::Length) {
    throw DomainError("amplitude coupling is only valid with axis L");
  }
  if (outputs.empty()) throw DomainError("sweep needs at least one output");
  if (backend == Backend::Oracle) oracle.validate();
}

std::vector<double> linspace(double start, double stop, int count) {
  check_range("grid", start, stop, count);
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = start;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
  out.back() = stop;
  return out;
}

RobotConfig apply_axis(const RobotConfig& cfg, SweepAxis axis, double value,
                       const AmplitudeCoupling* coupling) {
  RobotConfig out = cfg;
  switch (axis) {
    case SweepAxis::FSym: out.anterior.frequency = out.posterior.frequency = value; break;
    case SweepAxis::F1: out.anterior.frequency = value; break;
    case SweepAxis::F2: out.posterior.frequency = value; break;
    case SweepAxis::Length:
      out.anterior.length = out.posterior.length = value;
      if (coupling) out.anterior.amplitude = out.posterior.amplitude = coupling->amplitude(value);
      break;
    case SweepAxis::Wavelength: out.anterior.wavelength = out.posterior.wavelength = value; break;
    case SweepAxis::Amplitude: out.anterior.amplitude = out.posterior.amplitude = value; break;
  }
  return out;
}

SolveResult evaluate(const RobotConfig& cfg, Backend backend, const OracleSettings& oracle) {
  return backend == Backend::ClosedForm ? full_solve(cfg) : oracle_full_solve(cfg, oracle);
}

Table sweep(const RobotConfig& cfg, const SweepSpec& spec) {
  spec.validate();
  const std::vector<double> grid = linspace(spec.start, spec.stop, spec.count);
  const AmplitudeCoupling* coupling = spec.coupling ? &*spec.coupling : nullptr;

  Table table;
  table.columns.push_back(axis_column(spec.axis));
  for (Output o : spec.outputs) table.columns.push_back(output_column(o));
  table.rows.resize(grid.size());

  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      const SolveResult r = evaluate(apply_axis(cfg, spec.axis, grid[i], coupling), spec.backend,
                                     spec.oracle);
      auto& row = table.rows[i];
      row.push_back(grid[i]);
      for (Output o : spec.outputs) row.push_back(output_value(r, o));
    } catch (const Error&) {
      rethrow_at(std::string("sweep point ") + to_string(spec.axis) + "=" + format_number(grid[i]));
    }
  });
  return table;
}

void HeatmapSpec::validate() const {
  check_range("f1", f1_start, f1_stop, f1_count);
  check_range("f2", f2_start, f2_stop, f2_count);
  if (output != Output::U_X && output != Output::Eta) {
    throw DomainError("heatmap output must be U_X or eta");
  }
  if (backend == Backend::Oracle) oracle.validate();
}

Table Heatmap::to_table() const {
  Table t;
  t.columns = {"f1_hz", "f2_hz", output_column(output)};
  for (std::size_t i = 0; i < f1.size(); ++i) {
    for (std::size_t j = 0; j < f2.size(); ++j) t.rows.push_back({f1[i], f2[j], at(i, j)});
  }
  return t;
}

Heatmap heatmap(const RobotConfig& cfg, const HeatmapSpec& spec) {
  spec.validate();
  Heatmap h;
  h.output = spec.output;
  h.f1 = linspace(spec.f1_start, spec.f1_stop, spec.f1_count);
  h.f2 = linspace(spec.f2_start, spec.f2_stop, spec.f2_count);
  h.values.assign(h.f1.size() * h.f2.size(), 0.0);
  const std::size_t cols = h.f2.size();

  parallel_for(h.values.size(), [&](std::size_t k) {
    const double f1 = h.f1[k / cols];
    const double f2 = h.f2[k % cols];
    try {
      RobotConfig point = cfg;
      point.anterior.frequency = f1;
      point.posterior.frequency = f2;
      h.values[k] = output_value(evaluate(point, spec.backend, spec.oracle), spec.output);
    } catch (const Error&) {
      rethrow_at("heatmap point f1=" + format_number(f1) + ", f2=" + format_number(f2));
    }
  });
  return h;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BIFLAG_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace biflag
