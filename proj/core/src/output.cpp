#include "biflag/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "biflag/errors.hpp"
#include "json.hpp"

namespace biflag {

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw DomainError("table has no column '" + name + "'");
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(idx));
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf, end);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw Error("failed writing '" + path + "'");
}

void write_csv_file(const std::string& path, const Table& table) {
  std::ostringstream os;
  write_csv(os, table);
  write_text_file(path, os.str());
}

std::string solve_result_json(const SolveResult& r, int indent) {
  using nlohmann::ordered_json;
  auto num = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
  ordered_json j;
  j["U_X"] = num(r.U_X);
  j["F1"] = num(r.F1);
  j["F2"] = num(r.F2);
  j["F_body"] = num(r.F_body);
  j["residual"] = num(r.residual);
  j["P1"] = num(r.P1);
  j["P2"] = num(r.P2);
  j["P0"] = num(r.P0);
  j["eta"] = num(r.eta);
  j["CoT"] = num(r.CoT);
  j["Re"] = num(r.Re);
  j["units"] = {{"U_X", "m/s"}, {"F1", "N"},  {"F2", "N"},  {"F_body", "N"},
                {"residual", "N"}, {"P1", "W"}, {"P2", "W"}, {"P0", "W"},
                {"eta", "1"},      {"CoT", "1"}, {"Re", "1"}};
  return j.dump(indent);
}

}  // namespace biflag
