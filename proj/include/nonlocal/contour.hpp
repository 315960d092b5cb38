#pragma once

// Integration hyperbola z(zeta) = a_I cosh(zeta) - i b_I sinh(zeta) enveloping a
// sectorial spectrum, together with the geometry of the strip |nu| < d1/2 in
// which the shifted hyperbolas stay clear of the spectrum.

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace nonlocal {

/// Spectrum contained in {rho0 + r e^{i theta} : |theta| < phi}.
struct SpectralBounds {
  double rho0 = 1.0;
  double phi = 0.0;
  std::optional<double> resolvent_const;  // M in ||(zI-A)^{-1}|| <= M/(1+|z|)

  /// Imaginary semi-axis of the spectral hyperbola.
  double b0() const { return rho0 * std::tan(phi); }

  void validate() const {
    if (!(rho0 > 0.0) || !std::isfinite(rho0))
      throw std::invalid_argument("spectral bounds: rho0 must be positive, got " + std::to_string(rho0));
    if (!(phi >= 0.0 && phi < std::numbers::pi / 2))
      throw std::invalid_argument("spectral bounds: phi must lie in [0, pi/2), got " + std::to_string(phi));
    if (resolvent_const && !(*resolvent_const > 0.0))
      throw std::invalid_argument("spectral bounds: resolvent constant must be positive");
  }
};

struct Contour {
  SpectralBounds bounds;
  double rho1 = 0.0;  // abscissa where the innermost shifted hyperbola crosses the real axis
  double a = 0.0;     // a_I
  double b = 0.0;     // b_I
  double d1 = 0.0;    // strip width; the strip is |nu| < d1/2
  bool self_adjoint = false;
};

struct PathPoint {
  std::complex<double> z;
  std::complex<double> dz;  // z'(zeta)
  double zeta = 0.0;
};

/// Contour for a sector with half-angle phi whose innermost shifted hyperbola
/// passes through (rho1, 0).
inline Contour make_contour(const SpectralBounds& bounds, double rho1 = 0.0) {
  bounds.validate();
  if (!(rho1 >= 0.0))
    throw std::invalid_argument("make_contour: rho1 must be nonnegative");
  if (!(rho1 < bounds.rho0))
    throw std::invalid_argument("make_contour: rho1 must be smaller than rho0 (contour would touch the spectrum)");

  const double r = std::hypot(bounds.rho0, bounds.b0());
  const double d1 = std::acos(rho1 / r) - bounds.phi;
  if (!(d1 > 0.0))
    throw std::invalid_argument("make_contour: degenerate strip (d1 <= 0)");

  Contour c;
  c.bounds = bounds;
  c.rho1 = rho1;
  c.d1 = d1;
  c.a = r * std::cos(d1 / 2 + bounds.phi);
  c.b = r * std::sin(d1 / 2 + bounds.phi);
  return c;
}

/// Contour for a self-adjoint positive operator: the strip is bounded by the
/// imaginary axis and the spectral ray [rho0, inf).
inline Contour make_self_adjoint_contour(double rho0) {
  if (!(rho0 > 0.0) || !std::isfinite(rho0))
    throw std::invalid_argument("make_self_adjoint_contour: rho0 must be positive");
  Contour c;
  c.bounds = SpectralBounds{rho0, 0.0, std::nullopt};
  c.rho1 = 0.0;
  c.a = rho0 / std::numbers::sqrt2;
  c.b = c.a;
  c.d1 = std::numbers::pi / 2;
  c.self_adjoint = true;
  return c;
}

inline PathPoint contour_point(const Contour& c, double zeta) {
  const double ch = std::cosh(zeta);
  const double sh = std::sinh(zeta);
  return PathPoint{{c.a * ch, -c.b * sh}, {c.a * sh, -c.b * ch}, zeta};
}

/// Semi-axes (a(nu), b(nu)) of the hyperbola obtained by shifting zeta -> zeta + i nu.
inline std::pair<double, double> shifted_axes(const Contour& c, double nu) {
  if (!(std::abs(nu) <= c.d1 / 2))
    throw std::invalid_argument("shifted_axes: |nu| exceeds the half strip width d1/2");
  const double r = std::hypot(c.bounds.rho0, c.bounds.b0());
  const double angle = c.d1 / 2 + c.bounds.phi - nu;
  return {r * std::cos(angle), r * std::sin(angle)};
}

}  // namespace nonlocal
