#pragma once

#include "omlat/lattice.hpp"
#include "omlat/noise.hpp"
#include "omlat/path.hpp"

namespace omlat {

struct IntegratorOptions {
  /// Any |u_i| above this aborts the run with IntegrationError.
  double blowup_threshold = 1e8;
};

/// Euler-Maruyama stepper for du = drift(u) dt + Q(t) dW that reuses its
/// scratch buffers across steps.
class EulerMaruyama {
 public:
  explicit EulerMaruyama(const LatticeConfig& cfg);

  /// u <- u + drift(u) dt + q(t) .* dW.
  void step(Vector& u, double t, double dt, const Eigen::Ref<const Vector>& dW);

 private:
  const LatticeConfig* cfg_;
  Vector drift_;
  Vector q_;
};

/// Integrates from u0 over the noise window [offset dt, (offset + steps) dt],
/// evaluating q at absolute time. The window must lie inside [0, cfg.T].
Path integrate(const LatticeState& u0, const NoisePath& noise, const LatticeConfig& cfg,
               const IntegratorOptions& options = {});

/// Noise-free trajectory from u0 with `steps` uniform steps over [0, T].
Path integrate_deterministic(const LatticeState& u0, const LatticeConfig& cfg, std::size_t steps);

}  // namespace omlat
