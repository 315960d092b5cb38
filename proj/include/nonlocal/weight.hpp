#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nonlocal {

/// ||w||_{C[0,T]}; `estimated` is set when the value comes from sampling.
struct SupNorm {
  double value = 0.0;
  bool estimated = false;
};

/// Weight w(s) of the nonlocal condition u(0) + int_0^T w(s) u(s) ds = u0.
class WeightFunction {
public:
  enum class Kind { constant, cosine, cosine_square, polynomial, callable };

  static constexpr int sup_norm_samples = 2048;

  WeightFunction() = default;

  static WeightFunction zero() { return constant(0.0); }

  static WeightFunction constant(double c) {
    WeightFunction w;
    w.kind_ = Kind::constant;
    w.coeffs_ = {c};
    return w;
  }

  static WeightFunction cosine() {
    WeightFunction w;
    w.kind_ = Kind::cosine;
    return w;
  }

  /// cos(s^2)
  static WeightFunction cosine_square() {
    WeightFunction w;
    w.kind_ = Kind::cosine_square;
    return w;
  }

  /// sum_j coeffs[j] s^j
  static WeightFunction polynomial(std::vector<double> coeffs) {
    WeightFunction w;
    w.kind_ = Kind::polynomial;
    w.coeffs_ = std::move(coeffs);
    return w;
  }

  /// The callable must be safe to invoke concurrently.
  static WeightFunction callable(std::function<double(double)> f, std::optional<double> sup_norm_hint = {}) {
    if (!f) throw std::invalid_argument("WeightFunction::callable: empty function");
    WeightFunction w;
    w.kind_ = Kind::callable;
    w.fn_ = std::move(f);
    w.hint_ = sup_norm_hint;
    return w;
  }

  WeightFunction& with_sup_norm_hint(double value) {
    if (!(value >= 0.0)) throw std::invalid_argument("sup-norm hint must be nonnegative");
    hint_ = value;
    return *this;
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  bool is_zero() const {
    return (kind_ == Kind::constant || kind_ == Kind::polynomial) &&
           std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
  }

  double operator()(double s) const {
    switch (kind_) {
      case Kind::constant: return coeffs_.front();
      case Kind::cosine: return std::cos(s);
      case Kind::cosine_square: return std::cos(s * s);
      case Kind::polynomial: {
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
        return acc;
      }
      case Kind::callable: {
        const double v = fn_(s);
        if (!std::isfinite(v))
          throw std::domain_error("weight function returned a non-finite value at s = " + std::to_string(s));
        return v;
      }
    }
    return 0.0;
  }

  /// Analytic maximum where known (all enumerated trigonometric forms peak at
  /// s = 0), else 2048-point sampling of [0, T].
  SupNorm sup_norm(double T) const {
    if (hint_) return {*hint_, false};
    switch (kind_) {
      case Kind::constant: return {std::abs(coeffs_.front()), false};
      case Kind::cosine:
      case Kind::cosine_square: return {1.0, false};
      case Kind::polynomial:
      case Kind::callable: break;
    }
    double m = 0.0;
    for (int i = 0; i < sup_norm_samples; ++i)
      m = std::max(m, std::abs((*this)(T * i / (sup_norm_samples - 1))));
    return {m, true};
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::constant: return "const " + std::to_string(coeffs_.front());
      case Kind::cosine: return "cos(s)";
      case Kind::cosine_square: return "cos(s^2)";
      case Kind::polynomial: return "polynomial of degree " + std::to_string(coeffs_.size() - 1);
      case Kind::callable: return "user callable";
    }
    return {};
  }

private:
  Kind kind_ = Kind::constant;
  std::vector<double> coeffs_{0.0};
  std::function<double(double)> fn_;
  std::optional<double> hint_;
};

}  // namespace nonlocal
