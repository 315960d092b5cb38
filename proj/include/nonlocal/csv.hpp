#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>

#include "nonlocal/errors.hpp"

namespace nonlocal {

struct CsvRow {
  int n = 0;
  int N = 0;
  double t = 0.0;
  double x = 0.0;
  double value = 0.0;
  std::optional<double> abs_error;  // empty field when no reference exists
};

inline constexpr std::string_view csv_header = "n,N,t,x,value,abs_error";

/// 17 significant digits, locale independent; parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, std::span<const CsvRow> rows) {
  os << csv_header << '\n';
  for (const CsvRow& r : rows) {
    os << r.n << ',' << r.N << ',' << format_number(r.t) << ',' << format_number(r.x) << ','
       << format_number(r.value) << ',';
    if (r.abs_error) os << format_number(*r.abs_error);
    os << '\n';
  }
}

inline void emit_csv(std::span<const CsvRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace nonlocal
