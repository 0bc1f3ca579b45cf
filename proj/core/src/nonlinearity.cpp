#include "omlat/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "omlat/errors.hpp"

namespace omlat {

PolynomialNonlinearity::PolynomialNonlinearity(std::vector<double> odd_coeffs,
                                               int growth_exponent, double growth_constant)
    : coeffs_(std::move(odd_coeffs)), p_(growth_exponent), c_f_(growth_constant) {
  if (p_ < 1) throw ConfigError("growth exponent p must be a positive integer");
  if (!(c_f_ >= 0.0) || !std::isfinite(c_f_)) throw ConfigError("growth constant C_f must be >= 0");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ConfigError("f_coeffs must be finite");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

PolynomialNonlinearity PolynomialNonlinearity::with_default_growth(std::vector<double> odd_coeffs) {
  while (!odd_coeffs.empty() && odd_coeffs.back() == 0.0) odd_coeffs.pop_back();
  // x^(2k) <= 1 + x^(2p) for k <= p, so C_f = sum |c_k| works with p = max k.
  int p = std::max<int>(1, static_cast<int>(odd_coeffs.size()) - 1);
  double c_f = 0.0;
  for (double c : odd_coeffs) c_f += std::abs(c);
  return PolynomialNonlinearity(std::move(odd_coeffs), p, c_f);
}

bool PolynomialNonlinearity::is_zero() const { return coeffs_.empty(); }

// Horner in y = x^2 on the coefficient sequence produced by `term(k)`.
namespace {
template <class Term>
double horner(std::size_t count, double y, Term term) {
  double acc = 0.0;
  for (std::size_t k = count; k-- > 0;) acc = acc * y + term(k);
  return acc;
}
}  // namespace

double PolynomialNonlinearity::value(double x) const {
  const double y = x * x;
  return x * horner(coeffs_.size(), y, [&](std::size_t k) { return coeffs_[k]; });
}

double PolynomialNonlinearity::derivative(double x) const {
  const double y = x * x;
  return horner(coeffs_.size(), y,
                [&](std::size_t k) { return coeffs_[k] * static_cast<double>(2 * k + 1); });
}

double PolynomialNonlinearity::second_derivative(double x) const {
  if (coeffs_.size() < 2) return 0.0;
  const double y = x * x;
  // d2/dx2 x^(2k+1) = (2k+1)(2k) x^(2k-1), k >= 1
  return x * horner(coeffs_.size() - 1, y, [&](std::size_t j) {
           const double k = static_cast<double>(j + 1);
           return coeffs_[j + 1] * (2 * k + 1) * (2 * k);
         });
}

double PolynomialNonlinearity::third_derivative(double x) const {
  if (coeffs_.size() < 2) return 0.0;
  const double y = x * x;
  return horner(coeffs_.size() - 1, y, [&](std::size_t j) {
    const double k = static_cast<double>(j + 1);
    return coeffs_[j + 1] * (2 * k + 1) * (2 * k) * (2 * k - 1);
  });
}

Vector PolynomialNonlinearity::apply(const Vector& u) const {
  return u.unaryExpr([this](double x) { return value(x); });
}

PolynomialNonlinearity::ConditionReport PolynomialNonlinearity::check_conditions(
    double half_width, int points) const {
  ConditionReport report;
  if (points < 2) points = 2;
  const double h = 2.0 * half_width / (points - 1);
  double previous = value(-half_width);
  for (int j = 0; j < points; ++j) {
    const double x = -half_width + j * h;
    const double fx = value(x);
    // On a sorted grid, pairwise monotonicity is equivalent to adjacent order.
    if (j > 0 && fx < previous) report.monotone = false;
    previous = fx;
    const double bound = c_f_ * std::abs(x) * (1.0 + std::pow(x * x, p_));
    if (std::abs(fx) > bound * (1.0 + 1e-12) + 1e-300) report.growth = false;
  }
  return report;
}

}  // namespace omlat
