#include "omlat/integrator.hpp"

#include <cmath>
#include <string>

#include "omlat/errors.hpp"

namespace omlat {

namespace {

// out = -(nu A + lambda) u - f(u) + g without temporaries.
void drift_into(const Vector& u, const LatticeConfig& cfg, Vector& out) {
  const Eigen::Index d = u.size();
  for (Eigen::Index i = 0; i < d; ++i) {
    const double left = u[(i + d - 1) % d];
    const double right = u[(i + 1) % d];
    out[i] = -cfg.nu * (2.0 * u[i] - left - right) - cfg.lambda * u[i] - cfg.f.value(u[i]) + cfg.g[i];
  }
}

}  // namespace

EulerMaruyama::EulerMaruyama(const LatticeConfig& cfg)
    : cfg_(&cfg), drift_(cfg.dim()), q_(cfg.dim()) {}

void EulerMaruyama::step(Vector& u, double t, double dt, const Eigen::Ref<const Vector>& dW) {
  drift_into(u, *cfg_, drift_);
  for (int i = -cfg_->n; i <= cfg_->n; ++i) q_[i + cfg_->n] = cfg_->q.value(i, t);
  u += dt * drift_ + q_.cwiseProduct(dW);
}

Path integrate(const LatticeState& u0, const NoisePath& noise, const LatticeConfig& cfg,
               const IntegratorOptions& options) {
  const int d = cfg.dim();
  if (u0.size() != d || noise.dim() != d) {
    throw ConfigError("integrate: initial state / noise width must be 2n+1 = " + std::to_string(d));
  }
  const double end = noise.time(noise.steps());
  if (end > cfg.T * (1.0 + 1e-9) + 1e-12) {
    throw ConfigError("integrate: noise grid ends at t = " + std::to_string(end) +
                      ", beyond T = " + std::to_string(cfg.T));
  }
  const auto N = static_cast<Eigen::Index>(noise.steps());
  StateMatrix states(N + 1, d);
  states.row(0) = u0.transpose();
  EulerMaruyama stepper(cfg);
  Vector u = u0;
  for (Eigen::Index k = 0; k < N; ++k) {
    stepper.step(u, noise.time(static_cast<std::size_t>(k)), noise.dt, noise.increments.row(k).transpose());
    if (!u.allFinite() || u.cwiseAbs().maxCoeff() > options.blowup_threshold) {
      throw IntegrationError("integration blew up at step " + std::to_string(k + 1) + " (t = " +
                                 std::to_string(noise.time(static_cast<std::size_t>(k + 1))) +
                                 "): |u| exceeded " + std::to_string(options.blowup_threshold),
                             static_cast<std::size_t>(k + 1));
    }
    states.row(k + 1) = u.transpose();
  }
  Path path(noise.time(0), noise.dt, std::move(states));
  path.seed = noise.seed;
  return path;
}

Path integrate_deterministic(const LatticeState& u0, const LatticeConfig& cfg, std::size_t steps) {
  NoisePath silent;
  silent.dt = cfg.T / static_cast<double>(steps);
  silent.increments = StateMatrix::Zero(static_cast<Eigen::Index>(steps), cfg.dim());
  return integrate(u0, silent, cfg);
}

}  // namespace omlat
