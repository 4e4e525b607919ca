#pragma once

#include <string_view>

namespace biflag {

enum class Dimension { Length, Frequency, Dimensionless };

/// Parses "12cm", "0.12", "4.41hz", "65 mm" into SI. Bare numbers are taken as SI.
/// Suffixes (case-insensitive): m, cm, mm for lengths; hz for frequencies.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace biflag
