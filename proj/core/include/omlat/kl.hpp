#pragma once

#include <cstddef>
#include <vector>

namespace omlat {

/// Karhunen-Loeve spectrum of the OU covariance
///   K(t, s) = (e^{-lambda |t - s|} - e^{-lambda (t + s)}) / (2 lambda) on [0, 1].
/// Entry j describes mode i = j + 1: gamma_i solves tan(gamma) = -gamma/lambda
/// in ((2i-1) pi/2, (2i+1) pi/2), mu_i = 1/(lambda^2 + gamma_i^2) and
/// g_i(s) = A_i sin(gamma_i s) with unit L^2[0,1] norm.
struct KLSpectrum {
  double lambda = 0.0;
  std::vector<long double> roots;
  std::vector<double> eigenvalues;
  std::vector<double> normalizations;

  std::size_t size() const noexcept { return roots.size(); }
  double eigenfunction(std::size_t j, double s) const;
  /// |tan(gamma) + gamma/lambda| in extended precision.
  long double root_residual(std::size_t j) const;
};

KLSpectrum kl_spectrum(double lambda, std::size_t m);

double ou_kernel(double lambda, double t, double s);

/// max_t |int_0^1 K(t, s) g_j(s) ds - mu_j g_j(t)| over the nodes of a uniform
/// grid with `quad_points` points; the s-integral is split at s = t and uses
/// composite Simpson (with a 3/8 panel when a side has an odd interval count).
double kernel_eigen_check(const KLSpectrum& spectrum, std::size_t j, std::size_t quad_points);

/// max_{j,k} |int g_j g_k - delta_jk| by Simpson on `quad_points` points.
double orthogonality_defect(const KLSpectrum& spectrum, std::size_t quad_points);

/// sum_{j < m} mu_j g_j(t)^2, which increases to K(t, t).
double mercer_partial_sum(const KLSpectrum& spectrum, double t, std::size_t m);

/// mu_i ~ i^{-2}: the OU spectrum is treated as the alpha = 1 power law when
/// applying the small-ball bounds.
inline constexpr double kOuPowerLawAlpha = 1.0;
double ou_power_law_eigenvalue(std::size_t i);

/// Composite Simpson over uniformly spaced samples (3/8 rule on the last
/// three intervals when the interval count is odd). Needs >= 2 samples.
double simpson(const std::vector<double>& values, double h);

}  // namespace omlat
