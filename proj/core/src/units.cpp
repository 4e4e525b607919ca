#include "biflag/units.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include "biflag/errors.hpp"

namespace biflag {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
  const std::string_view body = trim(text);
  double value = 0.0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  if (!body.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || body.empty()) {
    throw DomainError("cannot parse quantity '" + std::string(text) + "'");
  }
  const std::string suffix = lower(trim(std::string_view(ptr, last - ptr)));
  double divisor = 1.0;
  bool ok = suffix.empty();
  if (dim == Dimension::Length) {
    if (suffix == "m") ok = true;
    if (suffix == "cm") ok = true, divisor = 100.0;
    if (suffix == "mm") ok = true, divisor = 1000.0;
  } else if (dim == Dimension::Frequency) {
    if (suffix == "hz") ok = true;
  }
  if (!ok) throw DomainError("unsupported unit '" + suffix + "' in '" + std::string(text) + "'");
  return value / divisor;
}

}  // namespace biflag
