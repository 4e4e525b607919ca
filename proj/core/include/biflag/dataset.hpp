#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace biflag {

/// One measured swimming speed of the robot, SI units.
struct ExperimentalPoint {
  double length = 0.0;  ///< flagellum length L, m
  double f1 = 0.0;      ///< anterior beat frequency, Hz
  double f2 = 0.0;      ///< posterior beat frequency, Hz
  double speed = 0.0;   ///< m/s
  double speed_sd = 0.0;
  std::string source;

  bool symmetric() const noexcept { return f1 == f2 && f1 > 0.0; }
  void validate() const;
};

/// The eight speed measurements of the desk-scale robot in glycerine.
std::vector<ExperimentalPoint> builtin_dataset();

/// Points beating both flagella at the same frequency. Single-flagellum runs are
/// left out: the force balance cannot tell pulling from pushing.
std::vector<ExperimentalPoint> symmetric_points(std::span<const ExperimentalPoint> points);

/// CSV with header L_m,f1_hz,f2_hz,speed_m_s,speed_sd_m_s,source.
std::vector<ExperimentalPoint> read_dataset_csv(std::istream& in);
std::vector<ExperimentalPoint> load_dataset_csv(const std::string& path);
void write_dataset_csv(std::ostream& out, std::span<const ExperimentalPoint> points);

/// Amplitude reached by a flagellum of given length, piecewise linear between
/// measured (L, A) pairs. Lengths outside the table are rejected.
class AmplitudeCoupling {
public:
  explicit AmplitudeCoupling(std::vector<std::pair<double, double>> table);

  double amplitude(double length) const;
  double min_length() const noexcept { return table_.front().first; }
  double max_length() const noexcept { return table_.back().first; }
  const std::vector<std::pair<double, double>>& table() const noexcept { return table_; }

private:
  std::vector<std::pair<double, double>> table_;
};

/// 6.5 cm -> 0.4 cm, 10 cm -> 0.6 cm, 12 cm -> 0.75 cm.
AmplitudeCoupling default_amplitude_coupling();

}  // namespace biflag
