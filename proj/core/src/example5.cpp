#include "omlat/example5.hpp"

#include <cmath>
#include <variant>

#include "omlat/errors.hpp"

namespace omlat {

LatticeConfig example5_config(int n) {
  return make_config(n, 0.1, 0.4, PolynomialNonlinearity({0.0, 0.1}, 1, 0.1),
                     NoiseCoefficient::site_profile(0.01, 31.0), 30.0);
}

LatticeState example5_initial_state(int n, double amplitude, double sigma) {
  LatticeState u(2 * n + 1);
  for (int i = -n; i <= n; ++i) u[i + n] = amplitude * std::exp(-double(i) * i / (2.0 * sigma * sigma));
  return u;
}

BVPSpec example5_bvp(int n, std::size_t steps) {
  BVPSpec spec;
  spec.cfg = example5_config(n);
  spec.phi0 = example5_initial_state(n);
  spec.phiT = LatticeState::Zero(2 * n + 1);
  spec.steps = steps;
  return spec;
}

bool is_example5(const LatticeConfig& cfg) {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
  const auto& c = cfg.f.coefficients();
  const bool f_ok = c.size() == 2 && c[0] == 0.0 && close(c[1], 0.1);
  const auto* q = std::get_if<NoiseCoefficient::SiteProfile>(&cfg.q.representation());
  const bool q_ok = q && close(q->c0, 0.01) && close(q->a, 31.0);
  return close(cfg.nu, 0.1) && close(cfg.lambda, 0.4) && f_ok && cfg.g.isZero(0.0) && q_ok &&
         close(cfg.T, 30.0);
}

namespace {

StateMatrix el_residual_impl(const Path& path, const LatticeConfig& cfg, bool weighted_neighbours) {
  if (!is_example5(cfg)) throw ConfigError("el_residual_example5: config is not the example system");
  if (path.dim() != cfg.dim()) throw ConfigError("el_residual_example5: path width mismatch");
  if (std::abs(path.t0) > 1e-12 || std::abs(path.horizon() - 30.0) > 1e-9) {
    throw ConfigError("el_residual_example5: path must span [0, 30]");
  }
  const auto N = static_cast<Eigen::Index>(path.steps());
  const int d = path.dim();
  const int n = cfg.n;
  const double dt = path.dt;
  StateMatrix out = StateMatrix::Zero(std::max<Eigen::Index>(N - 1, 0), d);
  auto wrap = [d](int c) { return ((c % d) + d) % d; };

  for (Eigen::Index k = 1; k < N; ++k) {
    const double t = path.time(static_cast<std::size_t>(k));
    const auto prev = path.states.row(k - 1);
    const auto cur = path.states.row(k);
    const auto next = path.states.row(k + 1);
    auto phi = [&](int c) { return cur(wrap(c)); };
    auto vel = [&](int c) { return (next(wrap(c)) - prev(wrap(c))) / (2.0 * dt); };
    auto s = [&](int c) { return 31.0 - t + 1.0 / (std::abs(wrap(c) - n) + 1.0); };
    // R_i = phi_i' - 0.1 (phi_{i-1} - 2 phi_i + phi_{i+1}) + 0.4 phi_i + 0.1 phi_i^3
    auto R = [&](int c) {
      const double p = phi(c);
      return vel(c) - 0.1 * (phi(c - 1) - 2.0 * p + phi(c + 1)) + 0.4 * p + 0.1 * p * p * p;
    };
    for (int c = 0; c < d; ++c) {
      const double p = phi(c);
      const double v = vel(c);
      const double acc = (next(c) - 2.0 * cur(c) + prev(c)) / (dt * dt);
      const double si = s(c);
      const double left = weighted_neighbours ? si * si / (s(c - 1) * s(c - 1)) : 1.0;
      const double right = weighted_neighbours ? si * si / (s(c + 1) * s(c + 1)) : 1.0;
      const double rhs = R(c) * (0.6 + 0.3 * p * p)
                         - 0.1 * R(c - 1) * left
                         - 0.1 * R(c + 1) * right
                         + (0.1 * (vel(c - 1) - 2.0 * v + vel(c + 1)) - 0.4 * v - 0.3 * p * p * v)
                         - 0.00003 * p * si * si
                         - 2.0 * R(c) / si;
      out(k - 1, c) = acc - rhs;
    }
  }
  return out;
}

}  // namespace

StateMatrix el_residual_example5(const Path& path, const LatticeConfig& cfg) {
  return el_residual_impl(path, cfg, false);
}

StateMatrix el_residual_example5_consistent(const Path& path, const LatticeConfig& cfg) {
  return el_residual_impl(path, cfg, true);
}

}  // namespace omlat
