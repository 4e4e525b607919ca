#include "biflag/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "biflag/errors.hpp"
#include "biflag/output.hpp"

namespace biflag {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 5;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf"};

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

// Degenerate ranges are widened so a constant series sits mid-axis.
Range padded(double lo, double hi) {
  if (hi > lo) return {lo, hi};
  const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_svg(const Table& table, const std::string& x_label, const std::string& y_label) {
  if (table.rows.empty() || table.columns.size() < 2) {
    throw DomainError("cannot plot an empty table");
  }
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw DomainError("ragged table row");
    for (double v : row) {
      if (!std::isfinite(v)) throw DomainError("cannot plot non-finite values");
    }
    xlo = std::min(xlo, row[0]);
    xhi = std::max(xhi, row[0]);
    for (std::size_t c = 1; c < row.size(); ++c) {
      ylo = std::min(ylo, row[c]);
      yhi = std::max(yhi, row[c]);
    }
  }
  const Range xr = padded(xlo, xhi);
  const Range yr = padded(ylo, yhi);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n"
     << "<g stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop + ph) << "\" x2=\"" << fixed2(kLeft + pw)
     << "\" y2=\"" << fixed2(kTop + ph) << "\"/>\n"
     << "<line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kTop) << "\" x2=\"" << fixed2(kLeft)
     << "\" y2=\"" << fixed2(kTop + ph) << "\"/>\n";
  for (int i = 0; i < kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / (kTicks - 1);
    const double fy = yr.lo + (yr.hi - yr.lo) * i / (kTicks - 1);
    os << "<line x1=\"" << fixed2(px(fx)) << "\" y1=\"" << fixed2(kTop + ph) << "\" x2=\"" << fixed2(px(fx))
       << "\" y2=\"" << fixed2(kTop + ph + 5) << "\"/>\n"
       << "<line x1=\"" << fixed2(kLeft - 5) << "\" y1=\"" << fixed2(py(fy)) << "\" x2=\"" << fixed2(kLeft)
       << "\" y2=\"" << fixed2(py(fy)) << "\"/>\n";
  }
  os << "</g>\n<g fill=\"black\">\n";
  for (int i = 0; i < kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / (kTicks - 1);
    const double fy = yr.lo + (yr.hi - yr.lo) * i / (kTicks - 1);
    os << "<text x=\"" << fixed2(px(fx)) << "\" y=\"" << fixed2(kTop + ph + 18)
       << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n"
       << "<text x=\"" << fixed2(kLeft - 8) << "\" y=\"" << fixed2(py(fy) + 4)
       << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
  }
  os << "<text x=\"" << fixed2(kLeft + pw / 2) << "\" y=\"" << fixed2(kHeight - 15)
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
     << "<text x=\"15\" y=\"" << fixed2(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
     << fixed2(kTop + ph / 2) << ")\">" << escape(y_label) << "</text>\n</g>\n";

  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    os << "<polyline fill=\"none\" stroke=\"" << kColors[(c - 1) % std::size(kColors)]
       << "\" stroke-width=\"1.5\" data-column=\"" << escape(table.columns[c]) << "\" points=\"";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      os << (r ? " " : "") << fixed2(px(table.rows[r][0])) << ',' << fixed2(py(table.rows[r][c]));
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void emit_plot(const Table& table, const std::string& x_label, const std::string& y_label,
               const std::string& path) {
  write_text_file(path, render_svg(table, x_label, y_label));
}

}  // namespace biflag
