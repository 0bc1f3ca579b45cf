#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "omlat/lattice.hpp"
#include "omlat/om_action.hpp"
#include "omlat/path.hpp"

namespace omlat {

/// Trapezoid-rule L^2([t0, T]; l^2_rho) distance between two paths on one grid.
double l2rho_path_norm(const Path& a, const Path& b, const Weights& rho);

/// Process whose small-ball probability normalizes the tube probability.
enum class ReferenceProcess {
  /// Linear part of the Euler-Maruyama scheme started at 0: the stochastic
  /// convolution discretized exactly like the numerator.
  EulerConvolution,
  /// Per-step exact kernel e^{-(nu A + lambda) dt} (left point).
  ExactConvolution,
  /// Plain W^Q(t) = int q dW.
  PlainWQ,
};

struct TubeExperiment {
  LatticeConfig cfg;
  Path reference;  // phi; phi(0) is the SDE initial condition
  std::vector<double> eps;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  ReferenceProcess denominator = ReferenceProcess::EulerConvolution;
  std::size_t min_hits = 50;
};

struct TubeRow {
  double eps = 0.0;
  std::size_t num_hits = 0;
  std::size_t den_hits = 0;
  std::size_t joint_hits = 0;
  double ratio = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double predicted = 0.0;  // exp(-total / 2)
};

struct TubeResult {
  std::vector<TubeRow> rows;
  OMReport action;
};

/// P(||u - phi|| <= eps) / P(||X|| <= eps) with common random numbers across
/// eps and across numerator/denominator. The CI is a delta-method interval on
/// log(ratio) that accounts for the numerator/denominator correlation.
/// Throws StatisticalPowerError when the largest eps has fewer than
/// `min_hits` hits in either event.
TubeResult tube_ratio(const TubeExperiment& experiment);

}  // namespace omlat
