#include "omlat/lattice.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "omlat/errors.hpp"

namespace omlat {

namespace {

void require_same_length(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw ConfigError(std::string(what) + ": length mismatch (" + std::to_string(a.size()) +
                      " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

std::vector<std::string> LatticeConfig::validate() const {
  std::vector<std::string> warnings;
  if (n < 0) throw ConfigError("n must be >= 0");
  if (!(nu > 0.0)) throw ConfigError("nu must be > 0");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be > 0");
  const int d = dim();
  if (g.size() != d) throw ConfigError("g must have 2n+1 = " + std::to_string(d) + " entries");
  if (rho.size() != d) throw ConfigError("rho must have 2n+1 = " + std::to_string(d) + " entries");
  if (!g.allFinite()) throw ConfigError("g must be finite");
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0) || !std::isfinite(rho[i])) throw ConfigError("rho entries must be > 0");
  }
  if (q.table_sites() >= 0 && q.table_sites() != d) {
    throw ConfigError("q table has " + std::to_string(q.table_sites()) + " site columns, expected " +
                      std::to_string(d));
  }
  constexpr int kSamples = 1025;
  for (int k = 0; k < kSamples; ++k) {
    const double t = T * k / (kSamples - 1);
    for (int i = -n; i <= n; ++i) {
      const double qi = q.value(i, t);
      if (!std::isfinite(qi) || std::abs(qi) < 1e-12) {
        throw ConfigError("q_" + std::to_string(i) + "(" + std::to_string(t) +
                          ") vanishes; Q(t) must be non-degenerate on [0, T]");
      }
    }
  }
  const auto checks = f.check_conditions();
  if (!checks.monotone) {
    warnings.emplace_back("f fails the monotonicity grid check on [-10, 10]");
  }
  if (!checks.growth) {
    warnings.emplace_back("f fails the growth bound |f(x)| <= C_f |x| (1 + x^2p) on [-10, 10]");
  }
  return warnings;
}

LatticeConfig make_config(int n, double nu, double lambda, PolynomialNonlinearity f,
                          NoiseCoefficient q, double T) {
  LatticeConfig cfg;
  cfg.n = n;
  cfg.nu = nu;
  cfg.lambda = lambda;
  cfg.f = std::move(f);
  cfg.q = std::move(q);
  cfg.T = T;
  cfg.g = Vector::Zero(cfg.dim());
  cfg.rho = Weights::Ones(cfg.dim());
  return cfg;
}

double weighted_norm(const Vector& u, const Weights& rho) {
  require_same_length(u, rho, "weighted_norm");
  return u.cwiseProduct(rho).norm();
}

double weighted_inner(const Vector& u, const Vector& v, const Weights& rho) {
  require_same_length(u, rho, "weighted_inner");
  require_same_length(v, rho, "weighted_inner");
  return (u.array() * v.array() * rho.array().square()).sum();
}

Vector apply_A(const Vector& u) {
  const Eigen::Index d = u.size();
  Vector out(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double left = u[(i + d - 1) % d];
    const double right = u[(i + 1) % d];
    out[i] = -left + 2.0 * u[i] - right;
  }
  return out;
}

Vector apply_B(const Vector& u) {
  const Eigen::Index d = u.size();
  Vector out(d);
  for (Eigen::Index i = 0; i < d; ++i) out[i] = u[(i + 1) % d] - u[i];
  return out;
}

Vector apply_BT(const Vector& u) {
  const Eigen::Index d = u.size();
  Vector out(d);
  for (Eigen::Index i = 0; i < d; ++i) out[i] = u[(i + d - 1) % d] - u[i];
  return out;
}

Eigen::MatrixXd dense_A(int dim) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    A(i, i) += 2.0;
    A(i, (i + 1) % dim) -= 1.0;
    A(i, (i + dim - 1) % dim) -= 1.0;
  }
  return A;
}

Eigen::MatrixXd dense_B(int dim) {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    B(i, i) -= 1.0;
    B(i, (i + 1) % dim) += 1.0;
  }
  return B;
}

Eigen::MatrixXd linear_operator(const LatticeConfig& cfg) {
  return cfg.nu * dense_A(cfg.dim()) +
         cfg.lambda * Eigen::MatrixXd::Identity(cfg.dim(), cfg.dim());
}

Vector forcing(const Vector& u, const LatticeConfig& cfg) { return cfg.g - cfg.f.apply(u); }

Vector drift(const Vector& u, const LatticeConfig& cfg) {
  if (u.size() != cfg.dim()) {
    throw ConfigError("drift: state has " + std::to_string(u.size()) + " entries, expected " +
                      std::to_string(cfg.dim()));
  }
  return -cfg.nu * apply_A(u) - cfg.lambda * u + forcing(u, cfg);
}

}  // namespace omlat
