#pragma once

#include <cerrno>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "qptk/error.hpp"

namespace qptk::detail {

inline double parse_number(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw UsageError("empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) throw UsageError("not a number: '" + s + "'");
  return v;
}

/// Comma-separated numbers; an empty string yields an empty list.
inline std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_number(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace qptk::detail
