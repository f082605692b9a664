#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "pmfde/errors.hpp"

namespace pmfde {

using CsvValue = std::variant<double, long long, std::string>;
using CsvRow = std::vector<CsvValue>;

/// Round-trip-exact float formatting: 17 significant digits.
inline std::string csv_format(const CsvValue& v) {
  if (std::holds_alternative<double>(v)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v));
    return buf;
  }
  if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
  // quote only when the content requires it
  const std::string& s = std::get<std::string>(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Header plus rows, LF line endings, no trailing blank line beyond the final LF.
inline void emit_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows,
                     const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) f << ',';
    f << header[i];
  }
  f << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) f << ',';
      f << csv_format(row[i]);
    }
    f << '\n';
  }
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace pmfde
