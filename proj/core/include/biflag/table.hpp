#pragma once

#include <string>
#include <vector>

namespace biflag {

/// Column-labelled numeric table; the first column is the independent variable.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

}  // namespace biflag
