#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlocal/errors.hpp"
#include "nonlocal/weight.hpp"

namespace nonlocal {

/// (order+1)-point Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

struct LegendreValue {
  double p;       // P_m(x)
  double dp;      // P_m'(x)
};

inline LegendreValue legendre(int m, double x) {
  double p0 = 1.0, p1 = x;
  if (m == 0) return {1.0, 0.0};
  for (int k = 2; k <= m; ++k) {
    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, m * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace detail

/// Nodes are the roots of P_{n+1}, found by Newton iteration from the
/// asymptotic guesses cos(pi (i + 3/4) / (m + 1/2)); only the positive half is
/// iterated and mirrored, so the rule is exactly symmetric.
inline GaussRule gauss_legendre(int n) {
  if (n < 0) throw std::invalid_argument("gauss_legendre: order must be nonnegative");
  const int m = n + 1;
  GaussRule rule;
  rule.order = n;
  rule.nodes.assign(m, 0.0);
  rule.weights.assign(m, 0.0);

  constexpr int max_iterations = 100;
  constexpr double step_tol = 4 * std::numeric_limits<double>::epsilon();
  for (int i = 0; i < m / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    bool converged = false;
    for (int it = 0; it < max_iterations; ++it) {
      const auto [p, dp] = detail::legendre(m, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= step_tol) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericalError("gauss_legendre: Newton iteration did not converge for root " + std::to_string(i) +
                           " of P_" + std::to_string(m));
    const double dp = detail::legendre(m, x).dp;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[m - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[m - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (m % 2 == 1) {
    const double dp = detail::legendre(m, 0.0).dp;
    rule.nodes[m / 2] = 0.0;
    rule.weights[m / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

struct MappedRule {
  std::vector<double> xi;       // (T/2)(theta_j + 1)
  std::vector<double> weights;  // (T/2) omega_j
};

inline MappedRule map_to_interval(const GaussRule& rule, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("map_to_interval: T must be positive");
  MappedRule out;
  out.xi.reserve(rule.size());
  out.weights.reserve(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    out.xi.push_back(T / 2 * (rule.nodes[j] + 1.0));
    out.weights.push_back(T / 2 * rule.weights[j]);
  }
  return out;
}

/// Gauss approximation I_n(z) of int_0^T w(s) e^{-zs} ds with the products
/// (T/2) omega_j w(xi_j) computed once, for repeated evaluation along a contour.
class NonlocalKernel {
public:
  NonlocalKernel(const GaussRule& rule, const WeightFunction& w, double T) {
    const MappedRule mapped = map_to_interval(rule, T);
    if (w.is_zero()) return;
    xi_ = mapped.xi;
    coeff_.reserve(xi_.size());
    for (std::size_t j = 0; j < xi_.size(); ++j) coeff_.push_back(mapped.weights[j] * w(xi_[j]));
  }

  std::complex<double> operator()(std::complex<double> z) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < xi_.size(); ++j) acc += coeff_[j] * std::exp(-z * xi_[j]);
    return acc;
  }

private:
  std::vector<double> xi_;
  std::vector<double> coeff_;
};

inline std::complex<double> nonlocal_integral(const GaussRule& rule, const WeightFunction& w, double T,
                                              std::complex<double> z) {
  if (!(z.real() >= 0.0)) throw std::invalid_argument("nonlocal_integral: Re(z) must be nonnegative");
  return NonlocalKernel(rule, w, T)(z);
}

// Sinc step sizes -----------------------------------------------------------

/// Balances discretization and truncation error uniformly in t >= 0.
inline double sinc_step_uniform(double d1, double alpha, int N) {
  if (!(d1 > 0.0)) throw std::invalid_argument("sinc_step_uniform: d1 must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("sinc_step_uniform: alpha must lie in (0, 1)");
  if (N < 0) throw std::invalid_argument("sinc_step_uniform: N must be nonnegative");
  return std::sqrt(std::numbers::pi * d1 / (alpha * (N + 1)));
}

/// h = c1 ln(N) / N, for evaluation at a fixed t bounded away from zero.
inline double sinc_step_large_t(int N, double c1) {
  if (N < 2) throw std::invalid_argument("sinc_step_large_t: N must be at least 2");
  if (!(c1 > 0.0)) throw std::invalid_argument("sinc_step_large_t: c1 must be positive");
  return c1 * std::log(static_cast<double>(N)) / N;
}

/// h = scale / sqrt(N + 1): the sqrt(N+1) law of the uniform rule with the
/// prefactor given directly.
inline double sinc_step_scaled(int N, double scale) {
  if (N < 0) throw std::invalid_argument("sinc_step_scaled: N must be nonnegative");
  if (!(scale > 0.0)) throw std::invalid_argument("sinc_step_scaled: scale must be positive");
  return scale / std::sqrt(static_cast<double>(N + 1));
}

// A-priori bounds on |I - I_n| ------------------------------------------------

/// Integrand analytic inside the Bernstein ellipse E_rho and bounded there by M.
inline double gauss_error_bound_analytic(double M_bound, double rho, int n) {
  if (!(rho > 1.0)) throw std::invalid_argument("gauss_error_bound_analytic: rho must exceed 1");
  if (!(M_bound > 0.0)) throw std::invalid_argument("gauss_error_bound_analytic: M must be positive");
  if (n < 2) throw std::invalid_argument("gauss_error_bound_analytic: n must be at least 2");
  return 144.0 * M_bound * std::pow(rho, -2.0 * n) / (35.0 * (rho * rho - 1.0));
}

/// nu-th derivative of bounded variation V.
inline double gauss_error_bound_bv(double V, int nu, int n) {
  if (!(V >= 0.0)) throw std::invalid_argument("gauss_error_bound_bv: V must be nonnegative");
  if (nu < 1) throw std::invalid_argument("gauss_error_bound_bv: nu must be at least 1");
  if (n <= 2 * nu + 1) throw std::invalid_argument("gauss_error_bound_bv: n must exceed 2 nu + 1");
  return 32.0 * V / (15.0 * std::numbers::pi * nu * std::pow(static_cast<double>(n - 2 * nu - 1), 2 * nu + 1));
}

}  // namespace nonlocal
