#pragma once

#include <iosfwd>
#include <string>

#include "biflag/closed_form.hpp"
#include "biflag/table.hpp"

namespace biflag {

/// Shortest decimal text that parses back to the same double ('.' separator,
/// locale independent). Non-finite values print as nan, inf, -inf.
std::string format_number(double value);

/// Header row plus one line per row, comma separated, LF line endings.
void write_csv(std::ostream& out, const Table& table);
void write_csv_file(const std::string& path, const Table& table);

/// Fixed key order: U_X, F1, F2, F_body, residual, P1, P2, P0, eta, CoT, Re, then a
/// "units" object. Non-finite numbers are written as null.
std::string solve_result_json(const SolveResult& result, int indent = 2);

/// Writes text to path, throwing biflag::Error on I/O failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace biflag
