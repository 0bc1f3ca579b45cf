#pragma once

#include <vector>

#include "omlat/types.hpp"

namespace omlat {

/// Odd polynomial f(x) = sum_k c_k x^(2k+1). f(0) = 0 holds by construction.
class PolynomialNonlinearity {
 public:
  PolynomialNonlinearity() = default;

  /// `odd_coeffs[k]` multiplies x^(2k+1). `growth_exponent` and
  /// `growth_constant` are the p and C_f of |f(x)| <= C_f |x| (1 + x^(2p)).
  PolynomialNonlinearity(std::vector<double> odd_coeffs, int growth_exponent,
                         double growth_constant);

  /// Picks the smallest valid p (>= 1) and C_f = sum |c_k|.
  static PolynomialNonlinearity with_default_growth(std::vector<double> odd_coeffs);

  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  double third_derivative(double x) const;

  /// Componentwise (Nemytskii) application.
  Vector apply(const Vector& u) const;

  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  int growth_exponent() const noexcept { return p_; }
  double growth_constant() const noexcept { return c_f_; }
  bool is_zero() const;

  struct ConditionReport {
    bool monotone = true;  // (f(x) - f(y))(x - y) >= 0 on the grid
    bool growth = true;    // |f(x)| <= C_f |x| (1 + x^(2p)) on the grid
  };

  /// Grid check over `points` equispaced values in [-half_width, half_width].
  ConditionReport check_conditions(double half_width = 10.0, int points = 1001) const;

 private:
  std::vector<double> coeffs_;
  int p_ = 1;
  double c_f_ = 0.0;
};

}  // namespace omlat
