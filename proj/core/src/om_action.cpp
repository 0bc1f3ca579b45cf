#include "omlat/om_action.hpp"

#include <cmath>
#include <string>

#include "omlat/errors.hpp"
#include "omlat/path.hpp"
#include "json.hpp"

namespace omlat {

namespace {

void require_lattice(const Path& path, const LatticeConfig& cfg) {
  if (path.dim() != cfg.dim()) {
    throw ConfigError("path has " + std::to_string(path.dim()) + " sites, config expects " +
                      std::to_string(cfg.dim()));
  }
  if (path.steps() < 1 || !(path.dt > 0.0)) throw ConfigError("path needs at least one interval");
}

// (rho / q)^2 at the midpoint of interval k.
Vector inverse_noise_weight(const Path& path, std::size_t k, const LatticeConfig& cfg) {
  const double t = path.t0 + (static_cast<double>(k) + 0.5) * path.dt;
  Vector w(cfg.dim());
  for (int i = -cfg.n; i <= cfg.n; ++i) {
    const double q = cfg.q.value(i, t);
    if (!(std::abs(q) >= 1e-12)) {
      throw DegeneracyError("q_" + std::to_string(i) + "(" + std::to_string(t) +
                            ") is below 1e-12; Q(t) is not invertible");
    }
    const double r = cfg.rho[i + cfg.n] / q;
    w[i + cfg.n] = r * r;
  }
  return w;
}

// (nu A + lambda + diag f'(mid)) v
Vector linearized_operator(const Vector& mid, const Vector& v, const LatticeConfig& cfg) {
  Vector out = cfg.nu * apply_A(v) + cfg.lambda * v;
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] += cfg.f.derivative(mid[i]) * v[i];
  return out;
}

}  // namespace

Vector residual(const Path& path, std::size_t k, const LatticeConfig& cfg) {
  require_lattice(path, cfg);
  if (k >= path.steps()) throw ConfigError("residual: interval index out of range");
  const Vector a = path.state(k);
  const Vector b = path.state(k + 1);
  return (b - a) / path.dt - drift(0.5 * (a + b), cfg);
}

double trace_term(const Vector& state, const LatticeConfig& cfg) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < state.size(); ++i) {
    sum -= cfg.rho[i] * cfg.rho[i] * cfg.f.derivative(state[i]);
  }
  return sum;
}

double om_integrand(const Vector& state, const Vector& velocity, double t, const LatticeConfig& cfg) {
  const Vector r = velocity - drift(state, cfg);
  double sum = 0.0;
  for (int i = -cfg.n; i <= cfg.n; ++i) {
    const double scaled = cfg.rho[i + cfg.n] * r[i + cfg.n] / cfg.q.value(i, t);
    sum += scaled * scaled;
  }
  return sum + trace_term(state, cfg);
}

OMReport om_action(const Path& path, const LatticeConfig& cfg) {
  require_lattice(path, cfg);
  OMReport report;
  report.dt = path.dt;
  report.n = cfg.n;
  report.per_interval.resize(path.steps());
  for (std::size_t k = 0; k < path.steps(); ++k) {
    const Vector w = inverse_noise_weight(path, k, cfg);
    const Vector r = residual(path, k, cfg);
    const Vector mid = 0.5 * (path.state(k) + path.state(k + 1));
    auto& c = report.per_interval[k];
    c.drift = path.dt * w.dot(r.cwiseProduct(r));
    c.trace = path.dt * trace_term(mid, cfg);
    report.drift_term += c.drift;
    report.trace_term += c.trace;
  }
  report.total = report.drift_term + report.trace_term;
  return report;
}

StateMatrix om_gradient(const Path& path, const LatticeConfig& cfg) {
  require_lattice(path, cfg);
  const std::size_t N = path.steps();
  const int d = cfg.dim();
  if (N < 2) return StateMatrix(0, d);
  StateMatrix grad = StateMatrix::Zero(static_cast<Eigen::Index>(N - 1), d);
  const double dt = path.dt;
  for (std::size_t k = 0; k < N; ++k) {
    const Vector a = path.state(k);
    const Vector b = path.state(k + 1);
    const Vector mid = 0.5 * (a + b);
    const Vector r = (b - a) / dt - drift(mid, cfg);
    const Vector v = inverse_noise_weight(path, k, cfg).cwiseProduct(r);
    const Vector Mv = linearized_operator(mid, v, cfg);
    Vector trace_grad(d);
    for (int c = 0; c < d; ++c) {
      trace_grad[c] = -0.5 * dt * cfg.rho[c] * cfg.rho[c] * cfg.f.second_derivative(mid[c]);
    }
    if (k >= 1) grad.row(static_cast<Eigen::Index>(k - 1)) += (-2.0 * v + dt * Mv + trace_grad).transpose();
    if (k + 1 <= N - 1) grad.row(static_cast<Eigen::Index>(k)) += (2.0 * v + dt * Mv + trace_grad).transpose();
  }
  return grad;
}

std::string to_json(const OMReport& report) {
  nlohmann::ordered_json j;
  j["drift_term"] = report.drift_term;
  j["trace_term"] = report.trace_term;
  j["total"] = report.total;
  j["dt"] = report.dt;
  j["n"] = report.n;
  auto& rows = j["per_interval"] = nlohmann::ordered_json::array();
  for (const auto& c : report.per_interval) {
    rows.push_back({{"drift", c.drift}, {"trace", c.trace}});
  }
  return j.dump(2);
}

}  // namespace omlat
