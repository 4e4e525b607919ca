#include "biflag/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "biflag/errors.hpp"
#include "biflag/output.hpp"

namespace biflag {
namespace {

constexpr const char* kHeader = "L_m,f1_hz,f2_hz,speed_m_s,speed_sd_m_s,source";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& text, int line_no, const char* column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    std::ostringstream os;
    os << "dataset line " << line_no << ": column " << column << " is not a number: '" << text
       << "'";
    throw DomainError(os.str());
  }
}

}  // namespace

void ExperimentalPoint::validate() const {
  if (!(length > 0.0)) throw DomainError("experimental point needs L > 0");
  if (!(f1 >= 0.0 && f2 >= 0.0)) throw DomainError("experimental point needs f1, f2 >= 0");
  if (!(speed >= 0.0)) throw DomainError("experimental point needs speed >= 0");
  if (!(speed_sd >= 0.0)) throw DomainError("experimental point needs speed_sd >= 0");
}

std::vector<ExperimentalPoint> builtin_dataset() {
  // Frequency sweep at L = 12 cm, length sweep at 4.41 Hz, and the
  // dual/single-flagellum comparison.
  return {
      {0.12, 2.05, 2.05, 0.0118, 0.0005, "freq_sweep"},
      {0.12, 4.41, 4.41, 0.0332, 0.0004, "freq_sweep+length_sweep"},
      {0.12, 5.28, 5.28, 0.0341, 0.0003, "freq_sweep(top frequency also quoted as 5.18 Hz)"},
      {0.10, 4.41, 4.41, 0.0235, 0.0005, "length_sweep"},
      {0.065, 4.41, 4.41, 0.0094, 0.0003, "length_sweep"},
      {0.12, 4.41, 0.0, 0.0164, 0.0002, "anterior_only"},
      {0.12, 0.0, 4.41, 0.0044, 0.0002, "posterior_only"},
      {0.12, 4.41, 4.41, 0.0309, 0.0006, "dual_flagella_power_run"},
  };
}

std::vector<ExperimentalPoint> symmetric_points(std::span<const ExperimentalPoint> points) {
  std::vector<ExperimentalPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [](const ExperimentalPoint& p) { return p.symmetric(); });
  return out;
}

std::vector<ExperimentalPoint> read_dataset_csv(std::istream& in) {
  std::vector<ExperimentalPoint> points;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw DomainError(std::string("dataset header must be '") + kHeader + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split_csv_line(line);
    if (cells.size() != 6) {
      std::ostringstream os;
      os << "dataset line " << line_no << ": expected 6 columns, got " << cells.size();
      throw DomainError(os.str());
    }
    ExperimentalPoint p{parse_cell(cells[0], line_no, "L_m"),
                        parse_cell(cells[1], line_no, "f1_hz"),
                        parse_cell(cells[2], line_no, "f2_hz"),
                        parse_cell(cells[3], line_no, "speed_m_s"),
                        parse_cell(cells[4], line_no, "speed_sd_m_s"), cells[5]};
    p.validate();
    points.push_back(std::move(p));
  }
  if (!header_seen) throw DomainError("dataset is empty (missing header)");
  return points;
}

std::vector<ExperimentalPoint> load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open dataset '" + path + "'");
  return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, std::span<const ExperimentalPoint> points) {
  out << kHeader << '\n';
  for (const auto& p : points) {
    if (p.source.find_first_of(",\n") != std::string::npos) {
      throw DomainError("dataset source label may not contain ',' or newlines");
    }
    out << format_number(p.length) << ',' << format_number(p.f1) << ',' << format_number(p.f2)
        << ',' << format_number(p.speed) << ',' << format_number(p.speed_sd) << ',' << p.source
        << '\n';
  }
}

AmplitudeCoupling::AmplitudeCoupling(std::vector<std::pair<double, double>> table)
    : table_(std::move(table)) {
  if (table_.empty()) throw DomainError("amplitude coupling table is empty");
  std::sort(table_.begin(), table_.end());
  for (std::size_t i = 1; i < table_.size(); ++i) {
    if (table_[i].first == table_[i - 1].first) {
      throw DomainError("amplitude coupling table has duplicate lengths");
    }
  }
}

double AmplitudeCoupling::amplitude(double length) const {
  const double lo = min_length();
  const double hi = max_length();
  // Tolerate roundoff from uniformly spaced sweep grids landing on the table ends.
  const double slack = 1e-12 * std::max(1.0, hi);
  if (length < lo - slack || length > hi + slack) {
    std::ostringstream os;
    os << "flagellum length " << length << " m outside the amplitude coupling table [" << lo
       << ", " << hi << "] m";
    throw DomainError(os.str());
  }
  if (length <= lo) return table_.front().second;
  if (length >= hi) return table_.back().second;
  const auto upper = std::upper_bound(
      table_.begin(), table_.end(), length,
      [](double v, const std::pair<double, double>& e) { return v < e.first; });
  const auto lower = upper - 1;
  const double t = (length - lower->first) / (upper->first - lower->first);
  return lower->second + t * (upper->second - lower->second);
}

AmplitudeCoupling default_amplitude_coupling() {
  return AmplitudeCoupling({{0.065, 0.004}, {0.10, 0.006}, {0.12, 0.0075}});
}

}  // namespace biflag
