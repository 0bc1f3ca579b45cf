#include "omlat/noise.hpp"

#include <cmath>
#include <string>

#include "omlat/errors.hpp"
#include "omlat/rng.hpp"

namespace omlat {

NoisePath sample_noise(std::uint64_t seed, std::size_t steps, int dim, double dt) {
  if (steps < 1 || dim < 1 || !(dt > 0.0)) {
    throw ConfigError("sample_noise: need steps >= 1, dim >= 1, dt > 0");
  }
  NoisePath noise;
  noise.seed = seed;
  noise.dt = dt;
  noise.increments.resize(static_cast<Eigen::Index>(steps), dim);
  const double scale = std::sqrt(dt);
  const int half = (dim - 1) / 2;
  for (std::size_t k = 0; k < steps; ++k) {
    for (int c = 0; c < dim; ++c) {
      noise.increments(static_cast<Eigen::Index>(k), c) = scale * keyed_normal(seed, k, c - half);
    }
  }
  return noise;
}

NoisePath shift_noise_steps(const NoisePath& noise, std::size_t m) {
  if (m >= noise.steps()) {
    throw ConfigError("shift_noise: shift of " + std::to_string(m) + " steps leaves no increments");
  }
  NoisePath out;
  out.seed = noise.seed;
  out.dt = noise.dt;
  out.offset = noise.offset + m;
  out.increments = noise.increments.bottomRows(noise.increments.rows() - static_cast<Eigen::Index>(m));
  return out;
}

NoisePath shift_noise(const NoisePath& noise, double s) {
  const double m = s / noise.dt;
  const double rounded = std::round(m);
  if (s < 0.0 || std::abs(m - rounded) > 1e-9 * std::max(1.0, m)) {
    throw ConfigError("shift_noise: s = " + std::to_string(s) + " is not on the grid");
  }
  return shift_noise_steps(noise, static_cast<std::size_t>(rounded));
}

NoisePath coarsen(const NoisePath& noise, std::size_t factor) {
  if (factor < 1 || noise.steps() % factor != 0 || noise.offset % factor != 0) {
    throw ConfigError("coarsen: factor must divide the step count and offset");
  }
  NoisePath out;
  out.seed = noise.seed;
  out.dt = noise.dt * static_cast<double>(factor);
  out.offset = noise.offset / factor;
  const auto coarse = static_cast<Eigen::Index>(noise.steps() / factor);
  out.increments = StateMatrix::Zero(coarse, noise.dim());
  for (Eigen::Index k = 0; k < coarse; ++k) {
    for (std::size_t j = 0; j < factor; ++j) {
      out.increments.row(k) += noise.increments.row(k * static_cast<Eigen::Index>(factor) + static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

Path wq_path(const NoisePath& noise, const NoiseCoefficient& q) {
  const auto N = static_cast<Eigen::Index>(noise.steps());
  const int d = noise.dim();
  const int half = noise.half_width();
  StateMatrix states = StateMatrix::Zero(N + 1, d);
  for (Eigen::Index k = 0; k < N; ++k) {
    const double t = noise.time(static_cast<std::size_t>(k));
    for (int c = 0; c < d; ++c) {
      states(k + 1, c) = states(k, c) + q.value(c - half, t) * noise.increments(k, c);
    }
  }
  Path path(noise.time(0), noise.dt, std::move(states));
  path.seed = noise.seed;
  return path;
}

Path ou_convolution(const NoisePath& noise, const NoiseCoefficient& q, const Vector& alpha) {
  const int d = noise.dim();
  if (alpha.size() != d) throw ConfigError("ou_convolution: need one rate per site");
  const auto N = static_cast<Eigen::Index>(noise.steps());
  const int half = noise.half_width();
  const Vector decay = (-alpha * noise.dt).array().exp();
  StateMatrix states = StateMatrix::Zero(N + 1, d);
  for (Eigen::Index k = 0; k < N; ++k) {
    const double t = noise.time(static_cast<std::size_t>(k));
    for (int c = 0; c < d; ++c) {
      states(k + 1, c) = decay[c] * (states(k, c) + q.value(c - half, t) * noise.increments(k, c));
    }
  }
  Path path(noise.time(0), noise.dt, std::move(states));
  path.seed = noise.seed;
  return path;
}

}  // namespace omlat
