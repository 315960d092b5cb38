#pragma once

// Line-oriented `key = value` run configuration. `#` starts a comment; unknown
// or repeated keys are errors.
//
//   operator    laplacian1d | sine | diagonal
//   m, modes    size of laplacian1d (interior points) or sine (modes)
//   eigenvalues comma list, diagonal operator only
//   T           horizon of the nonlocal condition
//   weight      zero | const:C | cos | cos_square | poly:C0,C1,...
//   u0          sine:K | poly_x2_1mx | file:PATH
//   n, N        Gauss order (n+1 nodes), Sinc truncation
//   alpha       regularity hint in (0,1) for the uniform step
//   rho1        contour shift
//   t           comma list of evaluation times
//   step_mode   uniform | large_t | scaled
//   c1          large_t constant;  scale: scaled-step prefactor
//   x           comma list of evaluation points (sine operator)
//   out         CSV output path

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nonlocal/errors.hpp"
#include "nonlocal/solver.hpp"
#include "nonlocal/weight.hpp"

namespace nonlocal {

enum class OperatorKind { laplacian1d, sine, diagonal };
enum class InitialKind { sine_mode, poly_x2_1mx, file };

struct RunConfig {
  OperatorKind op_kind = OperatorKind::sine;
  int size = 0;                      // m or modes; eigenvalue count for diagonal
  std::vector<double> eigenvalues;   // diagonal only
  double T = 0.0;
  std::string weight_name;
  WeightFunction weight;
  InitialKind u0_kind = InitialKind::sine_mode;
  int u0_mode = 1;
  std::filesystem::path u0_file;
  int n = 16;
  int N = 32;
  double alpha = 0.5;
  double rho1 = 0.0;
  std::vector<double> t{1.0};
  StepMode step = UniformStep{};
  std::vector<double> x{0.5};
  std::optional<std::filesystem::path> out;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

inline std::optional<long> to_integer(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<std::vector<double>> to_list(std::string_view s) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = to_double(s.substr(0, comma));
    if (!item) return std::nullopt;
    out.push_back(*item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

struct Entry {
  int line;
  std::string value;
};

}  // namespace detail

inline RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = ".") {
  static const std::set<std::string, std::less<>> known = {"operator", "modes", "m", "eigenvalues", "T",
                                                           "weight",   "u0",    "n", "N",           "alpha",
                                                           "rho1",     "t",     "step_mode", "c1",  "scale",
                                                           "x",        "out"};
  std::map<std::string, detail::Entry, std::less<>> entries;

  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
    if (!known.contains(key)) throw ConfigError(line_no, key, "unknown key");
    if (value.empty()) throw ConfigError(line_no, key, "missing value");
    if (const auto it = entries.find(key); it != entries.end())
      throw ConfigError(line_no, key, "repeated key (first given on line " + std::to_string(it->second.line) + ")");
    entries.emplace(key, detail::Entry{line_no, value});
  }

  const auto find = [&](std::string_view key) -> const detail::Entry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  const auto require = [&](const std::string& key) -> const detail::Entry& {
    const auto* e = find(key);
    if (!e) throw ConfigError(0, key, "required key is missing");
    return *e;
  };
  const auto real = [&](const std::string& key, const detail::Entry& e) {
    const auto v = detail::to_double(e.value);
    if (!v) throw ConfigError(e.line, key, "expected a number, got '" + e.value + "'");
    return *v;
  };
  const auto integer = [&](const std::string& key, const detail::Entry& e) {
    const auto v = detail::to_integer(e.value);
    if (!v) throw ConfigError(e.line, key, "expected an integer, got '" + e.value + "'");
    return *v;
  };
  const auto list = [&](const std::string& key, const detail::Entry& e) {
    const auto v = detail::to_list(e.value);
    if (!v) throw ConfigError(e.line, key, "expected a comma-separated list of numbers, got '" + e.value + "'");
    return *v;
  };

  RunConfig cfg;

  // operator and size
  {
    const auto& e = require("operator");
    if (e.value == "laplacian1d") cfg.op_kind = OperatorKind::laplacian1d;
    else if (e.value == "sine") cfg.op_kind = OperatorKind::sine;
    else if (e.value == "diagonal") cfg.op_kind = OperatorKind::diagonal;
    else throw ConfigError(e.line, "operator", "expected laplacian1d, sine or diagonal, got '" + e.value + "'");

    const auto* m = find("m");
    const auto* modes = find("modes");
    if (m && modes) throw ConfigError(modes->line, "modes", "give either 'm' or 'modes', not both");
    const auto* size_entry = m ? m : modes;
    const std::string size_key = m ? "m" : "modes";
    if (cfg.op_kind == OperatorKind::diagonal) {
      if (size_entry) throw ConfigError(size_entry->line, size_key, "not used by the diagonal operator");
      const auto& ev = require("eigenvalues");
      cfg.eigenvalues = list("eigenvalues", ev);
      for (double l : cfg.eigenvalues)
        if (!(l > 0.0)) throw ConfigError(ev.line, "eigenvalues", "eigenvalues must be positive");
      if (!std::is_sorted(cfg.eigenvalues.begin(), cfg.eigenvalues.end()))
        throw ConfigError(ev.line, "eigenvalues", "eigenvalues must be ascending");
      cfg.size = static_cast<int>(cfg.eigenvalues.size());
    } else {
      if (const auto* ev = find("eigenvalues"))
        throw ConfigError(ev->line, "eigenvalues", "only used by the diagonal operator");
      if (!size_entry) throw ConfigError(0, "m", "required key is missing (m or modes)");
      const long size = integer(size_key, *size_entry);
      const long min_size = cfg.op_kind == OperatorKind::laplacian1d ? 2 : 1;
      if (size < min_size || size > 1000000)
        throw ConfigError(size_entry->line, size_key,
                          "must be in [" + std::to_string(min_size) + ", 1000000], got " + std::to_string(size));
      cfg.size = static_cast<int>(size);
    }
  }

  {
    const auto& e = require("T");
    cfg.T = real("T", e);
    if (!(cfg.T > 0.0)) throw ConfigError(e.line, "T", "must be > 0, got " + e.value);
  }

  {
    const auto& e = require("weight");
    cfg.weight_name = e.value;
    const std::string_view v = e.value;
    if (v == "zero") cfg.weight = WeightFunction::zero();
    else if (v == "cos") cfg.weight = WeightFunction::cosine();
    else if (v == "cos_square") cfg.weight = WeightFunction::cosine_square();
    else if (v.starts_with("const:")) {
      const auto c = detail::to_double(v.substr(6));
      if (!c) throw ConfigError(e.line, "weight", "const:C needs a number, got '" + e.value + "'");
      cfg.weight = WeightFunction::constant(*c);
    } else if (v.starts_with("poly:")) {
      const auto c = detail::to_list(v.substr(5));
      if (!c) throw ConfigError(e.line, "weight", "poly:C0,C1,... needs numbers, got '" + e.value + "'");
      cfg.weight = WeightFunction::polynomial(*c);
    } else {
      throw ConfigError(e.line, "weight", "expected zero, const:C, cos, cos_square or poly:C0,C1,..., got '" +
                                              e.value + "'");
    }
  }

  {
    const auto& e = require("u0");
    const std::string_view v = e.value;
    if (v.starts_with("sine:")) {
      const auto k = detail::to_integer(v.substr(5));
      if (!k || *k < 1 || *k > cfg.size)
        throw ConfigError(e.line, "u0", "sine:K needs 1 <= K <= " + std::to_string(cfg.size) + ", got '" + e.value + "'");
      cfg.u0_kind = InitialKind::sine_mode;
      cfg.u0_mode = static_cast<int>(*k);
    } else if (v == "poly_x2_1mx") {
      if (cfg.op_kind == OperatorKind::diagonal)
        throw ConfigError(e.line, "u0", "poly_x2_1mx needs a spatial operator (laplacian1d or sine)");
      cfg.u0_kind = InitialKind::poly_x2_1mx;
    } else if (v.starts_with("file:")) {
      std::filesystem::path p(std::string(detail::trim(v.substr(5))));
      if (p.is_relative()) p = base_dir / p;
      if (!std::filesystem::is_regular_file(p))
        throw ConfigError(e.line, "u0", "file '" + p.string() + "' does not exist");
      cfg.u0_kind = InitialKind::file;
      cfg.u0_file = p;
    } else {
      throw ConfigError(e.line, "u0", "expected sine:K, poly_x2_1mx or file:PATH, got '" + e.value + "'");
    }
  }

  if (const auto* e = find("n")) {
    const long n = integer("n", *e);
    if (n < 0 || n > 4096) throw ConfigError(e->line, "n", "must be in [0, 4096], got " + e->value);
    cfg.n = static_cast<int>(n);
  }
  if (const auto* e = find("N")) {
    const long N = integer("N", *e);
    if (N < 0 || N > 1000000) throw ConfigError(e->line, "N", "must be in [0, 1000000], got " + e->value);
    cfg.N = static_cast<int>(N);
  }
  if (const auto* e = find("alpha")) {
    cfg.alpha = real("alpha", *e);
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw ConfigError(e->line, "alpha", "must lie in (0, 1), got " + e->value);
  }
  if (const auto* e = find("rho1")) {
    cfg.rho1 = real("rho1", *e);
    if (!(cfg.rho1 >= 0.0)) throw ConfigError(e->line, "rho1", "must be >= 0, got " + e->value);
  }
  if (const auto* e = find("t")) {
    cfg.t = list("t", *e);
    for (double t : cfg.t)
      if (!(t >= 0.0)) throw ConfigError(e->line, "t", "times must be >= 0");
  }
  if (const auto* e = find("x")) {
    if (cfg.op_kind != OperatorKind::sine) throw ConfigError(e->line, "x", "only used by the sine operator");
    cfg.x = list("x", *e);
    for (double x : cfg.x)
      if (!(x >= 0.0 && x <= 1.0)) throw ConfigError(e->line, "x", "points must lie in [0, 1]");
  }
  if (const auto* e = find("out")) cfg.out = std::filesystem::path(e->value);

  {
    const auto* mode = find("step_mode");
    const auto* c1 = find("c1");
    const auto* scale = find("scale");
    const std::string name = mode ? mode->value : "uniform";
    if (name == "uniform") {
      cfg.step = UniformStep{};
    } else if (name == "large_t") {
      LargeTimeStep s;
      if (c1) s.c1 = real("c1", *c1);
      if (c1 && !(s.c1 > 0.0)) throw ConfigError(c1->line, "c1", "must be > 0, got " + c1->value);
      if (cfg.N < 2) throw ConfigError(find("N") ? find("N")->line : mode->line, "N", "large_t step needs N >= 2");
      cfg.step = s;
    } else if (name == "scaled") {
      ScaledStep s;
      if (scale) s.scale = real("scale", *scale);
      if (scale && !(s.scale > 0.0)) throw ConfigError(scale->line, "scale", "must be > 0, got " + scale->value);
      cfg.step = s;
    } else {
      throw ConfigError(mode->line, "step_mode", "expected uniform, large_t or scaled, got '" + name + "'");
    }
    if (c1 && name != "large_t") throw ConfigError(c1->line, "c1", "only used with step_mode = large_t");
    if (scale && name != "scaled") throw ConfigError(scale->line, "scale", "only used with step_mode = scaled");
  }

  if (cfg.rho1 > 0.0) {
    // rho1 must stay left of the spectrum; rho0 is known for every kind.
    double rho0 = 0.0;
    switch (cfg.op_kind) {
      case OperatorKind::diagonal: rho0 = cfg.eigenvalues.front(); break;
      case OperatorKind::sine: rho0 = std::numbers::pi * std::numbers::pi; break;
      case OperatorKind::laplacian1d: {
        const double dx = 1.0 / (cfg.size + 1);
        const double s = std::sin(std::numbers::pi * dx / 2);
        rho0 = 4.0 / (dx * dx) * s * s;
        break;
      }
    }
    if (!(cfg.rho1 < rho0))
      throw ConfigError(find("rho1")->line, "rho1", "must be below the spectral bound rho0 = " + std::to_string(rho0));
  }
  return cfg;
}

}  // namespace nonlocal
