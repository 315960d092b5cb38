#pragma once

// Reference solutions for operators that are diagonal in a known eigenbasis.
// In that basis the nonlocal condition decouples, and mode k evolves as
//
//   u_k(t) = e^{-lambda_k t} c_k / (1 + J(lambda_k)),  J(l) = int_0^T w(s) e^{-ls} ds.
//
// J is integrated with composite 10-point Gauss panels and repeated halving.
// Nothing here shares code with the contour solver or its quadrature module.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlocal/errors.hpp"
#include "nonlocal/operators.hpp"
#include "nonlocal/weight.hpp"

namespace nonlocal::oracle {

struct ModeProblem {
  double lambda = 1.0;
  WeightFunction w;
  double T = 1.0;
  double c0 = 1.0;
};

inline constexpr int max_halvings = 24;
inline constexpr double relative_tolerance = 1e-14;

namespace detail {

// Positive nodes and weights of the 10-point Gauss-Legendre rule.
inline constexpr std::array<double, 5> panel_nodes = {
    0.14887433898163121088, 0.43339539412924719080, 0.67940956829902440623,
    0.86506336668898451073, 0.97390652851717172008};
inline constexpr std::array<double, 5> panel_weights = {
    0.29552422471475287017, 0.26926671930999635509, 0.21908636251598204400,
    0.14945134915058059315, 0.06667134430868813759};

template <class F>
double composite(const F& f, double T, long panels) {
  const double width = T / panels;
  double total = 0.0;
  for (long p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    const double half = width / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < panel_nodes.size(); ++i)
      s += panel_weights[i] * (f(mid - half * panel_nodes[i]) + f(mid + half * panel_nodes[i]));
    total += half * s;
  }
  return total;
}

}  // namespace detail

struct MomentResult {
  double value = 0.0;
  double previous = 0.0;  // estimate at half the panel count
  long panels = 1;
};

/// J(lambda) by halving the panel width until the relative change is <= 1e-14.
/// The starting mesh resolves the decay length 1/lambda (lambda * width <= 8),
/// so a fast exponential cannot vanish at every node of a coarse panel.
inline MomentResult weight_moment_detailed(const WeightFunction& w, double T, double lambda) {
  if (!(T > 0.0)) throw std::invalid_argument("weight_moment: T must be positive");
  if (w.is_zero()) return {0.0, 0.0, 1};
  const auto f = [&](double s) { return w(s) * std::exp(-lambda * s); };
  long panels = std::max(1L, static_cast<long>(std::ceil(std::abs(lambda) * T / 8.0)));
  double prev = detail::composite(f, T, panels);
  for (int level = 1; level <= max_halvings; ++level) {
    panels *= 2;
    const double cur = detail::composite(f, T, panels);
    if (std::abs(cur - prev) <= relative_tolerance * std::abs(cur) || (cur == 0.0 && prev == 0.0))
      return {cur, prev, panels};
    prev = cur;
  }
  throw NumericalError("weight_moment: refinement did not converge after " + std::to_string(max_halvings) +
                       " halvings (lambda = " + std::to_string(lambda) + ")");
}

inline double weight_moment(const WeightFunction& w, double T, double lambda) {
  return weight_moment_detailed(w, T, lambda).value;
}

/// int_0^T cos(s) e^{-lambda s} ds in closed form.
inline double cosine_weight_moment(double lambda, double T) {
  return (lambda + std::exp(-lambda * T) * (std::sin(T) - lambda * std::cos(T))) / (1.0 + lambda * lambda);
}

inline double mode_reference(const ModeProblem& p, double t) {
  if (!(p.lambda > 0.0)) throw std::invalid_argument("mode_reference: lambda must be positive");
  if (!(p.T > 0.0)) throw std::invalid_argument("mode_reference: T must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("mode_reference: t must be nonnegative");
  const double decayed = std::exp(-p.lambda * t) * p.c0;
  if (decayed == 0.0) return 0.0;
  const double denom = 1.0 + weight_moment(p.w, p.T, p.lambda);
  if (denom == 0.0) throw NumericalError("mode_reference: 1 + J(lambda) vanishes");
  return decayed / denom;
}

/// Mode-wise superposition for DiagonalOperator / SineSpectralOperator, whose
/// state vectors are already eigen-coefficients.
inline std::vector<double> reference_solution(const SectorialOperator& op, const WeightFunction& w, double T,
                                              std::span<const double> u0, double t) {
  const auto* eig = dynamic_cast<const EigenbasisOperator*>(&op);
  if (eig == nullptr)
    throw std::invalid_argument("reference_solution: operator is not diagonal in a known eigenbasis");
  if (u0.size() != eig->dim()) throw std::invalid_argument("reference_solution: u0 length mismatch");
  std::vector<double> out(u0.size());
  for (std::size_t k = 0; k < u0.size(); ++k)
    out[k] = u0[k] == 0.0 ? 0.0 : mode_reference({eig->eigenvalues()[k], w, T, u0[k]}, t);
  return out;
}

}  // namespace nonlocal::oracle
