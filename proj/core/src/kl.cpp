#include "omlat/kl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "omlat/errors.hpp"

namespace omlat {

namespace {

using Real = long double;

// tan(g) + g / lambda is increasing on each branch of tan, from -inf to +inf.
Real bisect_branch(std::size_t i, Real lambda) {
  constexpr Real pi = std::numbers::pi_v<Real>;
  const Real left_pole = (2.0L * static_cast<Real>(i) - 1.0L) * pi / 2.0L;
  const Real right_pole = left_pole + pi;
  auto h = [lambda](Real g) { return std::tan(g) + g / lambda; };
  Real delta = 1e-9L;
  Real lo = left_pole + delta;
  Real hi = right_pole - delta;
  // Very small lambda pushes the root towards the left pole.
  while (h(lo) >= 0.0L && delta > 1e-30L) {
    delta *= 1e-3L;
    lo = left_pole + delta;
  }
  if (h(lo) >= 0.0L || h(hi) <= 0.0L) {
    throw NumericalError("kl_spectrum: no sign change on branch " + std::to_string(i));
  }
  for (int iter = 0; iter < 400; ++iter) {
    const Real mid = 0.5L * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (h(mid) < 0.0L ? lo : hi) = mid;
  }
  return std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
}

}  // namespace

double simpson(const std::vector<double>& values, double h) {
  const std::size_t n = values.empty() ? 0 : values.size() - 1;
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h * (values[0] + values[1]);
  const std::size_t even = (n % 2 == 0) ? n : n - 3;
  double sum = 0.0;
  if (even > 0) {
    double acc = values[0] + values[even];
    for (std::size_t k = 1; k < even; ++k) acc += (k % 2 ? 4.0 : 2.0) * values[k];
    sum += acc * h / 3.0;
  }
  if (even != n) {
    const std::size_t b = even;
    sum += 3.0 * h / 8.0 * (values[b] + 3.0 * values[b + 1] + 3.0 * values[b + 2] + values[b + 3]);
  }
  return sum;
}

double KLSpectrum::eigenfunction(std::size_t j, double s) const {
  return normalizations[j] * std::sin(static_cast<double>(roots[j]) * s);
}

long double KLSpectrum::root_residual(std::size_t j) const {
  const Real g = roots[j];
  return std::abs(std::tan(g) + g / static_cast<Real>(lambda));
}

KLSpectrum kl_spectrum(double lambda, std::size_t m) {
  if (!(lambda > 0.0)) throw DomainError("kl_spectrum: lambda must be > 0");
  if (m < 1) throw DomainError("kl_spectrum: need m >= 1 modes");
  KLSpectrum spec;
  spec.lambda = lambda;
  for (std::size_t i = 1; i <= m; ++i) {
    const Real g = bisect_branch(i, static_cast<Real>(lambda));
    spec.roots.push_back(g);
    const double gd = static_cast<double>(g);
    spec.eigenvalues.push_back(1.0 / (lambda * lambda + gd * gd));
    // int_0^1 sin^2(g s) ds = 1/2 - sin(2g)/(4g)
    spec.normalizations.push_back(1.0 / std::sqrt(0.5 - std::sin(2.0 * gd) / (4.0 * gd)));
  }
  return spec;
}

double ou_kernel(double lambda, double t, double s) {
  return (std::exp(-lambda * std::abs(t - s)) - std::exp(-lambda * (t + s))) / (2.0 * lambda);
}

double kernel_eigen_check(const KLSpectrum& spectrum, std::size_t j, std::size_t quad_points) {
  if (j >= spectrum.size()) throw ConfigError("kernel_eigen_check: mode index out of range");
  if (quad_points < 3) throw ConfigError("kernel_eigen_check: need at least 3 quadrature points");
  const std::size_t intervals = quad_points - 1;
  const double h = 1.0 / static_cast<double>(intervals);
  std::vector<double> g(quad_points);
  for (std::size_t k = 0; k < quad_points; ++k) g[k] = spectrum.eigenfunction(j, static_cast<double>(k) * h);
  std::vector<double> left, right;
  double worst = 0.0;
  for (std::size_t m = 0; m < quad_points; ++m) {
    const double t = static_cast<double>(m) * h;
    left.clear();
    right.clear();
    for (std::size_t k = 0; k <= m; ++k) left.push_back(ou_kernel(spectrum.lambda, t, static_cast<double>(k) * h) * g[k]);
    for (std::size_t k = m; k < quad_points; ++k) right.push_back(ou_kernel(spectrum.lambda, t, static_cast<double>(k) * h) * g[k]);
    const double integral = simpson(left, h) + simpson(right, h);
    worst = std::max(worst, std::abs(integral - spectrum.eigenvalues[j] * g[m]));
  }
  return worst;
}

double orthogonality_defect(const KLSpectrum& spectrum, std::size_t quad_points) {
  if (quad_points < 3) throw ConfigError("orthogonality_defect: need at least 3 quadrature points");
  const double h = 1.0 / static_cast<double>(quad_points - 1);
  std::vector<std::vector<double>> samples(spectrum.size(), std::vector<double>(quad_points));
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    for (std::size_t k = 0; k < quad_points; ++k) samples[j][k] = spectrum.eigenfunction(j, static_cast<double>(k) * h);
  }
  std::vector<double> product(quad_points);
  double worst = 0.0;
  for (std::size_t a = 0; a < spectrum.size(); ++a) {
    for (std::size_t b = a; b < spectrum.size(); ++b) {
      for (std::size_t k = 0; k < quad_points; ++k) product[k] = samples[a][k] * samples[b][k];
      const double target = a == b ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(simpson(product, h) - target));
    }
  }
  return worst;
}

double mercer_partial_sum(const KLSpectrum& spectrum, double t, std::size_t m) {
  double sum = 0.0;
  for (std::size_t j = 0; j < std::min(m, spectrum.size()); ++j) {
    const double g = spectrum.eigenfunction(j, t);
    sum += spectrum.eigenvalues[j] * g * g;
  }
  return sum;
}

double ou_power_law_eigenvalue(std::size_t i) {
  const double x = static_cast<double>(i);
  return 1.0 / (x * x);
}

}  // namespace omlat
