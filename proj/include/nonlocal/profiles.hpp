#pragma once

// Initial-data profiles on (0,1) and their sine-series coefficients
// b_k = 2 int_0^1 f(x) sin(k pi x) dx.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace nonlocal {

/// Sine coefficients of the polynomial sum_j coeffs[j] x^j, k = 1..modes, from
/// the elementary antiderivatives of x^j sin(ax) and x^j cos(ax) at a = k pi
/// (with sin(k pi) = 0 and cos(k pi) = (-1)^k taken exactly).
inline std::vector<double> polynomial_sine_coefficients(std::span<const double> coeffs, int modes) {
  if (modes < 1) throw std::invalid_argument("polynomial_sine_coefficients: modes must be positive");
  std::vector<double> b(modes, 0.0);
  for (int k = 1; k <= modes; ++k) {
    const double a = k * std::numbers::pi;
    const double cos_a = (k % 2 == 0) ? 1.0 : -1.0;
    // S_j = int_0^1 x^j sin(ax) dx, C_j = int_0^1 x^j cos(ax) dx
    double S = (1.0 - cos_a) / a;
    double C = 0.0;
    double acc = coeffs.empty() ? 0.0 : coeffs[0] * S;
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
      const double S_next = -cos_a / a + static_cast<double>(j) / a * C;
      const double C_next = -static_cast<double>(j) / a * S;
      S = S_next;
      C = C_next;
      acc += coeffs[j] * S;
    }
    b[k - 1] = 2.0 * acc;
  }
  return b;
}

/// f(x) = (1 - x) x^2
inline std::vector<double> poly_x2_1mx_sine_coefficients(int modes) {
  const double coeffs[] = {0.0, 0.0, 1.0, -1.0};
  return polynomial_sine_coefficients(coeffs, modes);
}

inline double poly_x2_1mx(double x) { return (1.0 - x) * x * x; }

/// e_k in a basis of the given size (k is 1-based).
inline std::vector<double> unit_mode(int k, int size) {
  if (k < 1 || k > size) throw std::invalid_argument("unit_mode: mode index out of range");
  std::vector<double> v(size, 0.0);
  v[k - 1] = 1.0;
  return v;
}

inline double sine_series_value(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc += coeffs[k] * std::sin((k + 1) * std::numbers::pi * x);
  return acc;
}

/// Projects grid values v_j = f(j/(J+1)), j = 1..J, onto `modes` sine modes by
/// the discrete sine transform.
inline std::vector<double> grid_sine_coefficients(std::span<const double> values, int modes) {
  if (values.empty()) throw std::invalid_argument("grid_sine_coefficients: no grid values");
  const double dx = 1.0 / (values.size() + 1);
  std::vector<double> b(modes, 0.0);
  for (int k = 1; k <= modes; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) acc += values[j] * std::sin(k * std::numbers::pi * (j + 1) * dx);
    b[k - 1] = 2.0 * dx * acc;
  }
  return b;
}

}  // namespace nonlocal
