#include "biflag/design_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "biflag/errors.hpp"

namespace biflag {
namespace {

constexpr DesignParam kAllParams[] = {DesignParam::F1, DesignParam::F2, DesignParam::Length,
                                      DesignParam::Amplitude, DesignParam::Wavelength};

std::string describe(const std::vector<SearchAxis>& axes, const std::vector<double>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (i) os << ", ";
    os << to_string(axes[i].param) << "=" << values[i];
  }
  return os.str();
}

struct Evaluator {
  const RobotConfig& cfg;
  const DesignBounds& bounds;
  const std::vector<SearchAxis>& axes;
  Objective objective;
  long count = 0;

  double operator()(const std::vector<double>& values) {
    ++count;
    try {
      return evaluate_objective(apply_design(cfg, bounds, axes, values), objective);
    } catch (const DomainError& e) {
      throw DomainError("objective undefined at " + describe(axes, values) + ": " + e.what());
    } catch (const Error& e) {
      throw NumericalError("objective failed at " + describe(axes, values) + ": " + e.what());
    }
  }
};

}  // namespace

const char* to_string(DesignParam p) noexcept {
  switch (p) {
    case DesignParam::F1: return "f1";
    case DesignParam::F2: return "f2";
    case DesignParam::Length: return "L";
    case DesignParam::Amplitude: return "A";
    case DesignParam::Wavelength: return "lambda";
  }
  return "?";
}

DesignParam parse_design_param(const std::string& name) {
  for (DesignParam p : kAllParams) {
    if (name == to_string(p)) return p;
  }
  throw DomainError("unknown design parameter '" + name + "' (expected f1, f2, L, A, lambda)");
}

const char* to_string(Objective o) noexcept {
  return o == Objective::Speed ? "speed" : "efficiency";
}

Objective parse_objective(const std::string& name) {
  if (name == "speed") return Objective::Speed;
  if (name == "efficiency") return Objective::Efficiency;
  throw DomainError("unknown objective '" + name + "' (expected speed or efficiency)");
}

void DesignBounds::set(DesignParam p, Interval iv) {
  for (auto& [param, interval] : intervals) {
    if (param == p) {
      interval = iv;
      return;
    }
  }
  intervals.emplace_back(p, iv);
}

const Interval* DesignBounds::find(DesignParam p) const {
  for (const auto& [param, interval] : intervals) {
    if (param == p) return &interval;
  }
  return nullptr;
}

std::vector<SearchAxis> search_axes(const DesignBounds& bounds) {
  for (const auto& [param, iv] : bounds.intervals) {
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo <= iv.hi)) {
      throw DomainError(std::string("bounds for ") + to_string(param) + " must be finite with lo <= hi");
    }
  }

  std::vector<SearchAxis> axes;
  if (bounds.frequency_sum) {
    const double total = *bounds.frequency_sum;
    if (!(std::isfinite(total) && total >= 0.0)) {
      throw DomainError("frequency-sum constraint must be finite and >= 0");
    }
    const Interval* b1 = bounds.find(DesignParam::F1);
    const Interval* b2 = bounds.find(DesignParam::F2);
    Interval f1{0.0, total};
    if (b1) f1 = {std::max(f1.lo, b1->lo), std::min(f1.hi, b1->hi)};
    if (b2) f1 = {std::max(f1.lo, total - b2->hi), std::min(f1.hi, total - b2->lo)};
    if (f1.lo > f1.hi) throw DomainError("frequency bounds incompatible with the f1 + f2 constraint");
    axes.push_back({DesignParam::F1, f1});
  }
  for (DesignParam p : kAllParams) {
    if (bounds.frequency_sum && (p == DesignParam::F1 || p == DesignParam::F2)) continue;
    if (const Interval* iv = bounds.find(p)) axes.push_back({p, *iv});
  }
  if (axes.empty()) throw DomainError("no free design parameters");
  return axes;
}

RobotConfig apply_design(const RobotConfig& cfg, const DesignBounds& bounds,
                         const std::vector<SearchAxis>& axes, const std::vector<double>& values) {
  RobotConfig out = cfg;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const double v = values[i];
    switch (axes[i].param) {
      case DesignParam::F1: out.anterior.frequency = v; break;
      case DesignParam::F2: out.posterior.frequency = v; break;
      case DesignParam::Length: out.anterior.length = out.posterior.length = v; break;
      case DesignParam::Amplitude: out.anterior.amplitude = out.posterior.amplitude = v; break;
      case DesignParam::Wavelength: out.anterior.wavelength = out.posterior.wavelength = v; break;
    }
  }
  if (bounds.frequency_sum) {
    out.posterior.frequency = std::max(0.0, *bounds.frequency_sum - out.anterior.frequency);
  }
  return out;
}

double evaluate_objective(const RobotConfig& cfg, Objective objective) {
  const double u = solve_velocity(cfg);
  if (objective == Objective::Speed) return u;
  const Powers p = powers(cfg, u);
  return efficiency(p.body, p.anterior, p.posterior);
}

OptimizationResult optimize_design(const RobotConfig& cfg, const DesignBounds& bounds,
                                   Objective objective, const OptimizerOptions& options) {
  if (options.coarse_points < 2) throw DomainError("optimizer needs at least 2 coarse points per axis");
  const std::vector<SearchAxis> axes = search_axes(bounds);
  const std::size_t dim = axes.size();
  Evaluator eval{cfg, bounds, axes, objective};

  auto grid_value = [&](std::size_t axis, int index) {
    const Interval& r = axes[axis].range;
    if (index == options.coarse_points - 1) return r.hi;
    return r.lo + (r.hi - r.lo) * index / (options.coarse_points - 1);
  };

  // Coarse tensor grid, first best in lexicographic order wins ties.
  std::vector<int> idx(dim, 0);
  std::vector<double> point(dim);
  std::vector<double> best(dim);
  double best_value = -std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t k = 0; k < dim; ++k) point[k] = grid_value(k, idx[k]);
    const double v = eval(point);
    if (v > best_value) {
      best_value = v;
      best = point;
    }
    std::size_t k = 0;
    while (k < dim && ++idx[k] == options.coarse_points) idx[k++] = 0;
    if (k == dim) break;
  }

  OptimizationResult result;
  result.coarse_value = best_value;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  int sweep = 0;
  for (; sweep < options.max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t k = 0; k < dim; ++k) {
      const Interval& r = axes[k].range;
      const double span = r.hi - r.lo;
      if (span <= 0.0) continue;
      const double reach = span / (options.coarse_points - 1);
      const double x0 = best[k];
      auto along = [&](double x) {
        std::vector<double> p = best;
        p[k] = x;
        return eval(p);
      };

      double a = std::max(r.lo, x0 - reach);
      double b = std::min(r.hi, x0 + reach);
      double cand_x = x0;
      double cand_v = best_value;
      auto consider = [&](double x, double v) {
        if (v > cand_v) {
          cand_v = v;
          cand_x = x;
        }
      };
      consider(a, along(a));
      consider(b, along(b));

      double c = b - inv_phi * (b - a);
      double d = a + inv_phi * (b - a);
      double fc = along(c);
      double fd = along(d);
      const double xtol = 1e-12 * span;
      while (b - a > xtol) {
        if (fc >= fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - inv_phi * (b - a);
          fc = along(c);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + inv_phi * (b - a);
          fd = along(d);
        }
      }
      consider(c, fc);
      consider(d, fd);

      if (cand_v > best_value) {
        if (std::abs(cand_x - x0) >= options.step_fraction * span) moved = true;
        best[k] = cand_x;
        best_value = cand_v;
      }
    }
    if (!moved) {
      ++sweep;
      break;
    }
  }

  result.value = best_value;
  result.sweeps = sweep;
  result.evaluations = eval.count;
  for (std::size_t k = 0; k < dim; ++k) result.params.emplace_back(axes[k].param, best[k]);
  result.config = apply_design(cfg, bounds, axes, best);
  if (bounds.frequency_sum) {
    result.params.emplace_back(DesignParam::F2, result.config.posterior.frequency);
  }
  return result;
}

}  // namespace biflag
