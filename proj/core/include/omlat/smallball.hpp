#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace omlat {

/// Shapes of the small-ball bounds for weights i^{-alpha}:
///   P <= B1 eps^{rho (1 - alpha)} exp(-(alpha - 1/2) eps^{-2 rho})
///   P >= B2 eps^{rho (3 - alpha)} exp(-alpha (1 + rho)^rho eps^{-2 rho})
/// with rho = 1/(2 alpha - 1) and B1 = B2 = 1 (the constants are unknown).
struct SmallBallBounds {
  double alpha = 0.0;
  double rho = 0.0;
  double rate_up = 0.0;
  double rate_low = 0.0;
  double prefactor_exponent_up = 0.0;
  double prefactor_exponent_low = 0.0;
  double upper = 0.0;
  double lower = 0.0;
};

/// Throws DomainError unless alpha > 1/2 and 0 < eps <= 1.
SmallBallBounds smallball_bounds(double alpha, double eps);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Wilson score interval, z = 1.96 by default.
Interval wilson_interval(std::size_t hits, std::size_t trials, double z = 1.959963984540054);

enum class SmallBallEstimator {
  Indicator,    // fraction of samples with sum_i i^{-2 alpha} X_i^2 <= eps^2
  Conditional,  // integrates X_1 out analytically given X_2, X_3, ...
};

struct SmallBallOptions {
  double alpha = 1.0;
  std::size_t max_index = 0;  // I_max; 0 picks required_max_index
  std::vector<double> eps;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  SmallBallEstimator estimator = SmallBallEstimator::Indicator;
};

struct SmallBallEstimate {
  double eps = 0.0;
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t hits = 0;  // samples inside the ball
  double rate_up = 0.0;
  double rate_low = 0.0;
};

/// Smallest I with sum_{i > I} i^{-2 alpha} < 1e-3 eps^2 (integral bound).
std::size_t required_max_index(double alpha, double eps);

/// Estimates P(sqrt(sum_{i <= I_max} i^{-2 alpha} X_i^2) <= eps) for every eps
/// from one shared sample set. Throws ConfigError naming the required I_max
/// when the truncation tail is too heavy.
std::vector<SmallBallEstimate> smallball_mc(const SmallBallOptions& options);

}  // namespace omlat
