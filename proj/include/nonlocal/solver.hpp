#pragma once

// Sinc-quadrature solution of
//
//   u'(t) + A u(t) = 0,   u(0) + int_0^T w(s) u(s) ds = u0,
//
// from the contour representation
//
//   u(t) = 1/(2 pi i) int e^{-zt} [1 + I(z)]^{-1} [(zI-A)^{-1} - I/z] u0 dz,
//   I(z) = int_0^T w(s) e^{-zs} ds,
//
// over the hyperbola of contour.hpp, with I(z) replaced by its Gauss
// approximation I_n(z) and the zeta-integral by h sum_{|k|<=N} F(kh).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <exception>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "nonlocal/contour.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/quadrature.hpp"
#include "nonlocal/weight.hpp"

namespace nonlocal {

struct NonlocalProblem {
  std::shared_ptr<const SectorialOperator> op;
  double T = 1.0;
  WeightFunction w;
  std::vector<double> u0;
  double alpha = 0.5;  // u0 in D(A^alpha); only enters the uniform step rule

  void validate() const {
    if (!op) throw std::invalid_argument("NonlocalProblem: operator is null");
    if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("NonlocalProblem: T must be positive");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("NonlocalProblem: alpha must lie in (0, 1)");
    if (u0.size() != op->dim())
      throw std::invalid_argument("NonlocalProblem: u0 has length " + std::to_string(u0.size()) +
                                  ", operator dimension is " + std::to_string(op->dim()));
  }
};

/// h = sqrt(pi d1 / (alpha (N+1))), alpha taken from the problem.
struct UniformStep {};
/// h = c1 ln(N) / N
struct LargeTimeStep {
  double c1 = 1.0;
};
/// h = scale / sqrt(N+1)
struct ScaledStep {
  double scale = 1.0;
};
using StepMode = std::variant<UniformStep, LargeTimeStep, ScaledStep>;

struct SolverConfig {
  int n = 16;  // Gauss order: n+1 nodes
  int N = 32;  // Sinc truncation: nodes k = -N..N
  double rho1 = 0.0;
  StepMode step = UniformStep{};
  bool use_symmetry = true;
  unsigned threads = 1;

  void validate() const {
    if (n < 0) throw std::invalid_argument("SolverConfig: n must be nonnegative");
    if (N < 0) throw std::invalid_argument("SolverConfig: N must be nonnegative");
    if (!(rho1 >= 0.0)) throw std::invalid_argument("SolverConfig: rho1 must be nonnegative");
    if (threads == 0) throw std::invalid_argument("SolverConfig: threads must be positive");
    if (const auto* s = std::get_if<LargeTimeStep>(&step); s && (N < 2 || !(s->c1 > 0.0)))
      throw std::invalid_argument("SolverConfig: large-t step needs N >= 2 and c1 > 0");
    if (const auto* s = std::get_if<ScaledStep>(&step); s && !(s->scale > 0.0))
      throw std::invalid_argument("SolverConfig: step scale must be positive");
  }
};

struct ConditionReport {
  double a_I = 0.0;
  double T = 0.0;
  SupNorm w_sup;
  bool sharp_ok = false;                 // ||w|| < a_I
  bool rough_ok = false;                 // ||w|| <= 1/T
  std::optional<bool> self_adjoint_ok;   // ||w|| < rho0/sqrt(2), self-adjoint operators only
};

struct Grid {
  double h = 0.0;
  int N = 0;
  int n = 0;
};

struct SolutionSample {
  double t = 0.0;
  cvec value_complex;
  std::vector<double> value;  // Re(value_complex)
  double imag_residual = 0.0; // ||Im(value_complex)||_inf
  ConditionReport report;
  Grid grid;
  std::vector<std::string> warnings;
};

/// Self-adjoint operators with rho1 = 0 get the closed-form contour.
inline Contour solver_contour(const SectorialOperator& op, double rho1) {
  if (op.self_adjoint() && rho1 == 0.0) return make_self_adjoint_contour(op.spectral().rho0);
  return make_contour(op.spectral(), rho1);
}

inline ConditionReport check_existence(const NonlocalProblem& problem, const Contour& contour) {
  problem.validate();
  ConditionReport r;
  r.a_I = contour.a;
  r.T = problem.T;
  r.w_sup = problem.w.sup_norm(problem.T);
  r.sharp_ok = r.w_sup.value < contour.a;
  r.rough_ok = r.w_sup.value <= 1.0 / problem.T;
  if (problem.op->self_adjoint())
    r.self_adjoint_ok = r.w_sup.value < problem.op->spectral().rho0 / std::numbers::sqrt2;
  return r;
}

inline double step_size(const StepMode& mode, const Contour& contour, double alpha, int N) {
  return std::visit(
      [&](const auto& m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, UniformStep>) return sinc_step_uniform(contour.d1, alpha, N);
        else if constexpr (std::is_same_v<M, LargeTimeStep>) return sinc_step_large_t(N, m.c1);
        else return sinc_step_scaled(N, m.scale);
      },
      mode);
}

namespace detail {

inline constexpr double denominator_floor = 1e-13;
inline constexpr double imag_warning_ratio = 1e-8;

/// t-independent part of the integrand at one contour node:
///   F(t, zeta) = e^{-z t} * factor * image,
///   factor = z' / (2 pi i (1 + I_n(z))),  image = R^1_A(z) u0.
struct NodeData {
  PathPoint point;
  cplx factor;
  cvec image;
};

inline NodeData evaluate_node(const NonlocalProblem& problem, const Contour& contour, const NonlocalKernel& kernel,
                              const cvec& u0, double zeta) {
  NodeData node;
  node.point = contour_point(contour, zeta);
  const cplx denom = 1.0 + kernel(node.point.z);
  if (std::abs(denom) < denominator_floor)
    throw NumericalError("nonlocal denominator |1 + I_n(z)| collapsed at zeta = " + std::to_string(zeta) +
                         " (existence condition violated)");
  node.factor = node.point.dz / (cplx{0.0, 2.0 * std::numbers::pi} * denom);
  node.image.resize(u0.size());
  problem.op->resolve_modified(node.point.z, u0, node.image);
  return node;
}

inline void accumulate(cvec& acc, const NodeData& node, double h, double t) {
  const cplx s = h * node.factor * std::exp(-node.point.z * t);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s * node.image[i];
}

inline std::vector<NodeData> evaluate_nodes(const NonlocalProblem& problem, const Contour& contour,
                                            const NonlocalKernel& kernel, const std::vector<double>& zetas,
                                            unsigned threads) {
  const cvec u0(problem.u0.begin(), problem.u0.end());
  std::vector<NodeData> nodes(zetas.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(zetas.size())));
  if (workers == 1) {
    for (std::size_t k = 0; k < zetas.size(); ++k) nodes[k] = evaluate_node(problem, contour, kernel, u0, zetas[k]);
    return nodes;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < zetas.size(); k += workers)
            nodes[k] = evaluate_node(problem, contour, kernel, u0, zetas[k]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return nodes;
}

}  // namespace detail

/// Full integrand F_n(t, zeta), including 1/(2 pi i) and z'(zeta).
inline cvec integrand_eval(const NonlocalProblem& problem, const Contour& contour, const GaussRule& rule, double t,
                           double zeta) {
  problem.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("integrand_eval: t must be nonnegative");
  const NonlocalKernel kernel(rule, problem.w, problem.T);
  const cvec u0(problem.u0.begin(), problem.u0.end());
  detail::NodeData node = detail::evaluate_node(problem, contour, kernel, u0, zeta);
  cvec out(u0.size(), cplx{0.0, 0.0});
  detail::accumulate(out, node, 1.0, t);
  return out;
}

/// Evaluates u_{n,N}(t) for every t in ts. The contour nodes do not depend on
/// t, so each resolvent R^1_A(z_k) u0 is computed once and reused.
inline std::vector<SolutionSample> solve_many(const NonlocalProblem& problem, const SolverConfig& config,
                                              std::span<const double> ts) {
  problem.validate();
  config.validate();
  for (double t : ts)
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("solve: t must be finite and nonnegative");

  const Contour contour = solver_contour(*problem.op, config.rho1);
  const ConditionReport report = check_existence(problem, contour);
  if (!report.sharp_ok)
    throw ExistenceError("existence condition ||w|| < a_I fails: ||w|| = " + std::to_string(report.w_sup.value) +
                         ", a_I = " + std::to_string(report.a_I));

  std::vector<std::string> warnings;
  if (!report.rough_ok)
    warnings.push_back("||w||_C[0,T] = " + std::to_string(report.w_sup.value) + " exceeds 1/T = " +
                       std::to_string(1.0 / problem.T) +
                       "; the quadrature error analysis assumes ||w|| <= 1/T (solution still exists since ||w|| < a_I)");
  if (report.w_sup.estimated) warnings.push_back("||w|| was estimated by sampling");

  const GaussRule rule = gauss_legendre(config.n);
  const NonlocalKernel kernel(rule, problem.w, problem.T);
  const double h = step_size(config.step, contour, problem.alpha, config.N);

  // zetas: [0, h, ..., Nh] and, without symmetry, [-h, ..., -Nh] appended.
  std::vector<double> zetas;
  for (int k = 0; k <= config.N; ++k) zetas.push_back(k * h);
  if (!config.use_symmetry)
    for (int k = 1; k <= config.N; ++k) zetas.push_back(-k * h);
  const std::vector<detail::NodeData> nodes =
      detail::evaluate_nodes(problem, contour, kernel, zetas, config.threads);

  const std::size_t dim = problem.u0.size();
  std::vector<SolutionSample> out;
  out.reserve(ts.size());
  for (double t : ts) {
    // Fixed order: pairs (k, -k) for ascending k, then k = 0.
    cvec acc(dim, cplx{0.0, 0.0});
    cvec pos(dim), neg(dim);
    for (int k = 1; k <= config.N; ++k) {
      std::fill(pos.begin(), pos.end(), cplx{0.0, 0.0});
      detail::accumulate(pos, nodes[k], h, t);
      if (config.use_symmetry) {
        for (std::size_t i = 0; i < dim; ++i) acc[i] += pos[i] + std::conj(pos[i]);
      } else {
        std::fill(neg.begin(), neg.end(), cplx{0.0, 0.0});
        detail::accumulate(neg, nodes[config.N + k], h, t);
        for (std::size_t i = 0; i < dim; ++i) acc[i] += pos[i] + neg[i];
      }
    }
    detail::accumulate(acc, nodes[0], h, t);

    SolutionSample s;
    s.t = t;
    s.value_complex = std::move(acc);
    s.value.resize(dim);
    double vmax = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      s.value[i] = s.value_complex[i].real();
      vmax = std::max(vmax, std::abs(s.value[i]));
      s.imag_residual = std::max(s.imag_residual, std::abs(s.value_complex[i].imag()));
    }
    s.report = report;
    s.grid = Grid{h, config.N, config.n};
    s.warnings = warnings;
    if (s.imag_residual > detail::imag_warning_ratio * vmax)
      s.warnings.push_back("imaginary residual " + std::to_string(s.imag_residual) +
                           " is large relative to the solution; check the configuration");
    out.push_back(std::move(s));
  }
  return out;
}

inline SolutionSample solve_at(const NonlocalProblem& problem, const SolverConfig& config, double t) {
  const double ts[] = {t};
  return std::move(solve_many(problem, config, ts).front());
}

}  // namespace nonlocal
