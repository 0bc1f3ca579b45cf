#pragma once

#include <cstddef>
#include <cstdint>

#include "omlat/noise_coefficient.hpp"
#include "omlat/path.hpp"
#include "omlat/types.hpp"

namespace omlat {

/// Wiener increments on the grid t_k = (offset + k) dt, k = 0..steps-1.
/// Row k holds dW_i(t_k) ~ Normal(0, dt) for sites i = -(d-1)/2 .. (d-1)/2.
struct NoisePath {
  std::uint64_t seed = 0;
  double dt = 0.0;
  std::size_t offset = 0;
  StateMatrix increments;

  std::size_t steps() const noexcept { return static_cast<std::size_t>(increments.rows()); }
  int dim() const noexcept { return static_cast<int>(increments.cols()); }
  int half_width() const noexcept { return (dim() - 1) / 2; }
  /// Absolute time of the left end of step k.
  double time(std::size_t k) const noexcept {
    return static_cast<double>(offset + k) * dt;
  }
};

/// Draws are keyed by (seed, absolute step, signed site) so that the result
/// is independent of generation order and of the truncation width.
NoisePath sample_noise(std::uint64_t seed, std::size_t steps, int dim, double dt);

/// theta_s: drops the first m = s/dt steps. Throws ConfigError when s is not a
/// grid time or m >= steps.
NoisePath shift_noise(const NoisePath& noise, double s);
NoisePath shift_noise_steps(const NoisePath& noise, std::size_t m);

/// Same Brownian path on a grid `factor` times coarser (summed increments).
NoisePath coarsen(const NoisePath& noise, std::size_t factor);

/// W^Q_i(t_k) = sum_{j<k} q_i(t_j) dW_i(t_j), W^Q(t_0) = 0.
Path wq_path(const NoisePath& noise, const NoiseCoefficient& q);

/// X_i(t_{k+1}) = e^{-alpha_i dt} (X_i(t_k) + q_i(t_k) dW_i(t_k)), X(0) = 0.
Path ou_convolution(const NoisePath& noise, const NoiseCoefficient& q, const Vector& alpha);

}  // namespace omlat
