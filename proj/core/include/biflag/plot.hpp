#pragma once

#include <string>

#include "biflag/table.hpp"

namespace biflag {

/// Standalone SVG line plot: first column on x, one polyline per remaining column.
/// Output bytes depend only on the inputs. Throws DomainError for an empty table
/// or non-finite data.
std::string render_svg(const Table& table, const std::string& x_label, const std::string& y_label);

void emit_plot(const Table& table, const std::string& x_label, const std::string& y_label,
               const std::string& path);

}  // namespace biflag
