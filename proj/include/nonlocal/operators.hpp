#pragma once

// Sectorial operators exposed through their resolvent. Implementations are
// immutable and allocate any scratch storage per call, so one instance may be
// shared by concurrent contour-node evaluations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlocal/contour.hpp"
#include "nonlocal/errors.hpp"

namespace nonlocal {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

class SectorialOperator {
public:
  virtual ~SectorialOperator() = default;

  virtual std::size_t dim() const = 0;
  virtual SpectralBounds spectral() const = 0;
  virtual bool self_adjoint() const { return false; }

  /// out = (zI - A)^{-1} v
  virtual void resolve(cplx z, std::span<const cplx> v, std::span<cplx> out) const = 0;

  /// out = [(zI - A)^{-1} - I/z] v
  virtual void resolve_modified(cplx z, std::span<const cplx> v, std::span<cplx> out) const {
    resolve(z, v, out);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] -= v[i] / z;
  }

  /// out = A v
  virtual void apply(std::span<const cplx> v, std::span<cplx> out) const = 0;
};

namespace detail {

inline void check_dims(const SectorialOperator& op, std::size_t n, const char* who) {
  if (n != op.dim())
    throw std::invalid_argument(std::string(who) + ": vector length " + std::to_string(n) +
                                " does not match operator dimension " + std::to_string(op.dim()));
}

}  // namespace detail

inline cvec resolvent_apply(const SectorialOperator& op, cplx z, std::span<const cplx> v) {
  detail::check_dims(op, v.size(), "resolvent_apply");
  cvec out(v.size());
  op.resolve(z, v, out);
  return out;
}

inline cvec modified_resolvent_apply(const SectorialOperator& op, cplx z, std::span<const cplx> v) {
  detail::check_dims(op, v.size(), "modified_resolvent_apply");
  if (z == cplx{0.0, 0.0}) throw std::invalid_argument("modified_resolvent_apply: z must be nonzero");
  cvec out(v.size());
  op.resolve_modified(z, v, out);
  return out;
}

inline cvec operator_apply(const SectorialOperator& op, std::span<const cplx> v) {
  detail::check_dims(op, v.size(), "operator_apply");
  cvec out(v.size());
  op.apply(v, out);
  return out;
}

/// Operator acting by multiplication with a list of eigenvalues. Shared by the
/// diagonal test operator and the exact sine-series Laplacian.
class EigenbasisOperator : public SectorialOperator {
public:
  static constexpr double singular_threshold = 1e-14;

  std::size_t dim() const override { return eigenvalues_.size(); }
  SpectralBounds spectral() const override { return {eigenvalues_.front(), 0.0, std::nullopt}; }
  bool self_adjoint() const override { return true; }

  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

  void resolve(cplx z, std::span<const cplx> v, std::span<cplx> out) const override {
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] / gap(z, k);
  }

  // lambda / (z (z - lambda)), without the cancellation of 1/(z-lambda) - 1/z.
  void resolve_modified(cplx z, std::span<const cplx> v, std::span<cplx> out) const override {
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] * (eigenvalues_[k] / (z * gap(z, k)));
  }

  void apply(std::span<const cplx> v, std::span<cplx> out) const override {
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = eigenvalues_[k] * v[k];
  }

protected:
  explicit EigenbasisOperator(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {}

private:
  cplx gap(cplx z, std::size_t k) const {
    const cplx g = z - eigenvalues_[k];
    if (std::abs(g) < singular_threshold * std::abs(z))
      throw NumericalError("near-singular resolvent: z = (" + std::to_string(z.real()) + ", " +
                           std::to_string(z.imag()) + ") is within 1e-14|z| of eigenvalue " +
                           std::to_string(eigenvalues_[k]));
    return g;
  }

  std::vector<double> eigenvalues_;
};

class DiagonalOperator : public EigenbasisOperator {
public:
  /// Eigenvalues must be positive and ascending.
  explicit DiagonalOperator(std::vector<double> eigenvalues) : EigenbasisOperator(validated(std::move(eigenvalues))) {}

private:
  static std::vector<double> validated(std::vector<double> ev) {
    if (ev.empty()) throw std::invalid_argument("DiagonalOperator: needs at least one eigenvalue");
    for (double l : ev)
      if (!(l > 0.0) || !std::isfinite(l))
        throw std::invalid_argument("DiagonalOperator: eigenvalues must be positive and finite");
    if (!std::is_sorted(ev.begin(), ev.end()))
      throw std::invalid_argument("DiagonalOperator: eigenvalues must be ascending");
    return ev;
  }
};

/// -d^2/dx^2 on (0,1) with Dirichlet ends, in the basis sin(k pi x), k = 1..M.
/// State vectors are sine-series coefficients.
class SineSpectralOperator : public EigenbasisOperator {
public:
  explicit SineSpectralOperator(int modes) : EigenbasisOperator(spectrum(modes)) {}

  int modes() const noexcept { return static_cast<int>(dim()); }

private:
  static std::vector<double> spectrum(int modes) {
    if (modes < 1) throw std::invalid_argument("SineSpectralOperator: needs at least one mode");
    std::vector<double> ev(modes);
    for (int k = 1; k <= modes; ++k) ev[k - 1] = (k * std::numbers::pi) * (k * std::numbers::pi);
    return ev;
  }
};

/// Second-difference Dirichlet Laplacian on m interior points of (0,1):
/// (A v)_i = (-v_{i-1} + 2 v_i - v_{i+1}) / dx^2, dx = 1/(m+1).
class Laplacian1D : public SectorialOperator {
public:
  static constexpr double pivot_threshold = 1e-14;

  explicit Laplacian1D(int m) : m_(m) {
    if (m < 2) throw std::invalid_argument("Laplacian1D: m must be at least 2");
    dx_ = 1.0 / (m + 1);
  }

  int m() const noexcept { return m_; }
  double dx() const noexcept { return dx_; }
  double grid_point(int i) const { return (i + 1) * dx_; }  // i = 0..m-1

  /// k = 1..m
  double eigenvalue(int k) const {
    const double s = std::sin(k * std::numbers::pi * dx_ / 2);
    return 4.0 / (dx_ * dx_) * s * s;
  }

  std::size_t dim() const override { return static_cast<std::size_t>(m_); }
  SpectralBounds spectral() const override { return {eigenvalue(1), 0.0, std::nullopt}; }
  bool self_adjoint() const override { return true; }

  // Thomas elimination without pivoting. Every leading block of zI - A_h is
  // nonsingular for z off [lambda_1, lambda_m] (Cauchy interlacing), so the
  // pivots only vanish when z is on the spectrum; they are checked anyway.
  void resolve(cplx z, std::span<const cplx> v, std::span<cplx> out) const override {
    const double inv = 1.0 / (dx_ * dx_);
    const cplx diag = z - 2.0 * inv;
    const double off = inv;
    const double scale = std::abs(z) + 4.0 * inv;

    std::vector<cplx> c(m_);
    cplx pivot = diag;
    check_pivot(pivot, scale);
    c[0] = off / pivot;
    out[0] = v[0] / pivot;
    for (int i = 1; i < m_; ++i) {
      pivot = diag - off * c[i - 1];
      check_pivot(pivot, scale);
      c[i] = off / pivot;
      out[i] = (v[i] - off * out[i - 1]) / pivot;
    }
    for (int i = m_ - 2; i >= 0; --i) out[i] -= c[i] * out[i + 1];
  }

  void apply(std::span<const cplx> v, std::span<cplx> out) const override {
    const double inv = 1.0 / (dx_ * dx_);
    for (int i = 0; i < m_; ++i) {
      cplx acc = 2.0 * v[i];
      if (i > 0) acc -= v[i - 1];
      if (i + 1 < m_) acc -= v[i + 1];
      out[i] = acc * inv;
    }
  }

private:
  static void check_pivot(cplx pivot, double scale) {
    if (std::abs(pivot) < pivot_threshold * scale)
      throw NumericalError("tridiagonal resolvent: pivot underflow (z too close to the spectrum)");
  }

  int m_;
  double dx_;
};

inline Laplacian1D make_laplacian1d(int m) { return Laplacian1D(m); }

}  // namespace nonlocal
