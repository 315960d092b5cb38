#pragma once

// Config-driven runs, the two reference examples, and the sqrt(N+1) fit.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nonlocal/config.hpp"
#include "nonlocal/csv.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/oracle.hpp"
#include "nonlocal/profiles.hpp"
#include "nonlocal/solver.hpp"

namespace nonlocal {

struct RunResult {
  std::vector<CsvRow> rows;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<double> read_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::vector<double> values;
  std::string token;
  int index = 0;
  while (in >> token) {
    ++index;
    const auto v = to_double(token);
    if (!v) throw ConfigError(0, "u0", "value " + std::to_string(index) + " in '" + path.string() + "' is not a number");
    values.push_back(*v);
  }
  return values;
}

inline std::vector<double> grid_profile(int m, auto&& f) {
  std::vector<double> v(m);
  const double dx = 1.0 / (m + 1);
  for (int i = 0; i < m; ++i) v[i] = f((i + 1) * dx);
  return v;
}

}  // namespace detail

inline std::shared_ptr<const SectorialOperator> build_operator(const RunConfig& cfg) {
  switch (cfg.op_kind) {
    case OperatorKind::laplacian1d: return std::make_shared<Laplacian1D>(cfg.size);
    case OperatorKind::sine: return std::make_shared<SineSpectralOperator>(cfg.size);
    case OperatorKind::diagonal: return std::make_shared<DiagonalOperator>(cfg.eigenvalues);
  }
  throw std::invalid_argument("build_operator: unknown operator kind");
}

/// u0 in the operator's own representation: grid values for laplacian1d,
/// eigen-coefficients otherwise. File data are values on the uniform interior
/// grid for the two spatial operators and raw coefficients for diagonal.
inline std::vector<double> build_initial(const RunConfig& cfg) {
  const int size = cfg.size;
  switch (cfg.u0_kind) {
    case InitialKind::sine_mode:
      if (cfg.op_kind == OperatorKind::laplacian1d)
        return detail::grid_profile(size, [k = cfg.u0_mode](double x) { return std::sin(k * std::numbers::pi * x); });
      return unit_mode(cfg.u0_mode, size);
    case InitialKind::poly_x2_1mx:
      if (cfg.op_kind == OperatorKind::laplacian1d) return detail::grid_profile(size, poly_x2_1mx);
      return poly_x2_1mx_sine_coefficients(size);
    case InitialKind::file: {
      const auto values = detail::read_values(cfg.u0_file);
      if (cfg.op_kind == OperatorKind::sine) {
        if (values.empty()) throw ConfigError(0, "u0", "file '" + cfg.u0_file.string() + "' holds no values");
        return grid_sine_coefficients(values, size);
      }
      if (values.size() != static_cast<std::size_t>(size))
        throw ConfigError(0, "u0", "file '" + cfg.u0_file.string() + "' holds " + std::to_string(values.size()) +
                                       " values, expected " + std::to_string(size));
      return values;
    }
  }
  throw std::invalid_argument("build_initial: unknown profile");
}

inline NonlocalProblem build_problem(const RunConfig& cfg) {
  NonlocalProblem p;
  p.op = build_operator(cfg);
  p.T = cfg.T;
  p.w = cfg.weight;
  p.u0 = build_initial(cfg);
  p.alpha = cfg.alpha;
  return p;
}

inline SolverConfig build_solver_config(const RunConfig& cfg, unsigned threads = 1) {
  SolverConfig s;
  s.n = cfg.n;
  s.N = cfg.N;
  s.rho1 = cfg.rho1;
  s.step = cfg.step;
  s.threads = threads;
  return s;
}

inline RunResult run_config(const RunConfig& cfg, unsigned threads = 1) {
  const NonlocalProblem problem = build_problem(cfg);
  const auto samples = solve_many(problem, build_solver_config(cfg, threads), cfg.t);

  RunResult result;
  for (const auto& s : samples) {
    for (const auto& w : s.warnings)
      if (std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end())
        result.warnings.push_back(w);

    switch (cfg.op_kind) {
      case OperatorKind::laplacian1d: {
        const auto& lap = static_cast<const Laplacian1D&>(*problem.op);
        for (int i = 0; i < cfg.size; ++i)
          result.rows.push_back({cfg.n, cfg.N, s.t, lap.grid_point(i), s.value[i], std::nullopt});
        break;
      }
      case OperatorKind::sine: {
        const auto ref = oracle::reference_solution(*problem.op, problem.w, problem.T, problem.u0, s.t);
        for (double x : cfg.x) {
          const double v = sine_series_value(s.value, x);
          result.rows.push_back({cfg.n, cfg.N, s.t, x, v, std::abs(v - sine_series_value(ref, x))});
        }
        break;
      }
      case OperatorKind::diagonal: {
        const auto ref = oracle::reference_solution(*problem.op, problem.w, problem.T, problem.u0, s.t);
        for (int i = 0; i < cfg.size; ++i)
          result.rows.push_back({cfg.n, cfg.N, s.t, static_cast<double>(i + 1), s.value[i], std::abs(s.value[i] - ref[i])});
        break;
      }
    }
  }
  return result;
}

// The two reference examples on (0,1) with A = -d^2/dx^2, T = pi/2, evaluated
// at t = 1. `nodes` counts Gauss points (the rule has order nodes - 1), and the
// Sinc step is 1/sqrt(N+1).

inline constexpr int example2_modes = 200;
inline constexpr int example2_reference_nodes = 128;
inline constexpr int example2_reference_N = 1024;

/// Example 1: w = cos s, exact solution e^{-pi^2 t} sin(pi x). The data
/// coefficient is 1 + int_0^{pi/2} cos(s) e^{-pi^2 s} ds, which is what that
/// exact solution requires.
inline double example1_coefficient() {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double pi4 = pi2 * pi2;
  return (pi4 + 1.0 + pi2 + std::exp(-pi2 * std::numbers::pi / 2.0)) / (pi4 + 1.0);
}

inline NonlocalProblem example_problem(int example) {
  NonlocalProblem p;
  p.T = std::numbers::pi / 2.0;
  if (example == 1) {
    p.op = std::make_shared<SineSpectralOperator>(1);
    p.w = WeightFunction::cosine();
    p.u0 = {example1_coefficient()};
  } else if (example == 2) {
    p.op = std::make_shared<SineSpectralOperator>(example2_modes);
    p.w = WeightFunction::cosine_square();
    p.u0 = poly_x2_1mx_sine_coefficients(example2_modes);
  } else {
    throw ConfigError(0, "example", "must be 1 or 2, got " + std::to_string(example));
  }
  return p;
}

inline double example_point(int example) { return example == 1 ? 0.5 : 0.4; }

inline SolverConfig example_solver_config(int nodes, int N, unsigned threads = 1) {
  if (nodes < 1) throw ConfigError(0, "n", "must be >= 1 (number of Gauss points), got " + std::to_string(nodes));
  if (N < 0) throw ConfigError(0, "N", "must be >= 0, got " + std::to_string(N));
  SolverConfig s;
  s.n = nodes - 1;
  s.N = N;
  s.step = ScaledStep{1.0};
  s.threads = threads;
  return s;
}

/// u_{n,N}(x, 1) for one of the examples.
inline double example_value(int example, int nodes, int N, unsigned threads = 1) {
  const NonlocalProblem p = example_problem(example);
  const SolutionSample s = solve_at(p, example_solver_config(nodes, N, threads), 1.0);
  return sine_series_value(s.value, example_point(example));
}

inline CsvRow run_reproduction(int example, int nodes, int N, unsigned threads = 1) {
  const double x = example_point(example);
  const double v = example_value(example, nodes, N, threads);
  double ref = 0.0;
  if (example == 1)
    ref = std::exp(-std::numbers::pi * std::numbers::pi) * std::sin(std::numbers::pi * x);
  else
    ref = example_value(2, example2_reference_nodes, example2_reference_N, threads);
  return {nodes, N, 1.0, x, v, std::abs(v - ref)};
}

inline std::vector<CsvRow> run_convergence(int example, int nodes, const std::vector<int>& Ns, unsigned threads = 1) {
  if (example != 1) throw ConfigError(0, "example", "convergence study is defined for example 1 only");
  std::vector<CsvRow> rows;
  for (int N : Ns) rows.push_back(run_reproduction(1, nodes, N, threads));
  return rows;
}

/// Least-squares fit log(e) = intercept + slope * sqrt(N+1).
struct SqrtLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;  // in log(e)
  double range = 0.0;         // max log(e) - min log(e)
  double relative_residual() const { return range > 0.0 ? max_residual / range : 0.0; }
};

inline SqrtLawFit fit_sqrt_law(const std::vector<int>& Ns, const std::vector<double>& errors) {
  if (Ns.size() != errors.size() || Ns.size() < 2)
    throw std::invalid_argument("fit_sqrt_law: need at least two (N, error) pairs");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (!(errors[i] > 0.0)) throw std::invalid_argument("fit_sqrt_law: errors must be positive");
    xs.push_back(std::sqrt(Ns[i] + 1.0));
    ys.push_back(std::log(errors[i]));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::invalid_argument("fit_sqrt_law: N values must differ");
  SqrtLawFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < xs.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(ys[i] - (f.intercept + f.slope * xs[i])));
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  f.range = *hi - *lo;
  return f;
}

}  // namespace nonlocal
