#include "omlat/mpp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "omlat/errors.hpp"

namespace omlat {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

Vector flatten_interior(const Path& path) {
  const auto N = static_cast<Eigen::Index>(path.steps());
  const Eigen::Index d = path.dim();
  Vector x((N - 1) * d);
  for (Eigen::Index k = 1; k < N; ++k) x.segment((k - 1) * d, d) = path.states.row(k).transpose();
  return x;
}

void scatter_interior(const Vector& x, Path& path) {
  const auto N = static_cast<Eigen::Index>(path.steps());
  const Eigen::Index d = path.dim();
  for (Eigen::Index k = 1; k < N; ++k) path.states.row(k) = x.segment((k - 1) * d, d).transpose();
}

Vector flatten_gradient(const StateMatrix& g) {
  return Eigen::Map<const Vector>(g.data(), g.size());
}

// Gauss-Newton (optionally full Newton) Hessian of the discrete action with
// respect to the interior states.
SparseMatrix assemble_hessian(const Path& path, const LatticeConfig& cfg, HessianModel model) {
  const auto N = static_cast<Eigen::Index>(path.steps());
  const int d = cfg.dim();
  const double dt = path.dt;
  std::vector<Triplet> jac;
  jac.reserve(static_cast<std::size_t>(N * d * 6));
  std::vector<Triplet> extra;
  for (Eigen::Index k = 0; k < N; ++k) {
    const Vector a = path.states.row(k).transpose();
    const Vector b = path.states.row(k + 1).transpose();
    const Vector mid = 0.5 * (a + b);
    const double t = path.t0 + (static_cast<double>(k) + 0.5) * dt;
    Vector r;
    if (model == HessianModel::FullNewton) r = (b - a) / dt - drift(mid, cfg);
    for (int c = 0; c < d; ++c) {
      const double w = std::pow(cfg.rho[c] / cfg.q.value(c - cfg.n, t), 2);
      const double scale = std::sqrt(2.0 * dt * w);
      const Eigen::Index row = k * d + c;
      const double diag = 2.0 * cfg.nu + cfg.lambda + cfg.f.derivative(mid[c]);
      // (column-offset, value) pairs of 1/2 M in row c
      const std::pair<int, double> half_m[] = {
          {c, 0.5 * diag},
          {(c + 1) % d, -0.5 * cfg.nu},
          {(c + d - 1) % d, -0.5 * cfg.nu},
      };
      for (int side = 0; side < 2; ++side) {
        const Eigen::Index node = k + side;  // 0 -> phi_k, 1 -> phi_{k+1}
        if (node == 0 || node == N) continue;
        const Eigen::Index col0 = (node - 1) * d;
        jac.emplace_back(row, col0 + c, scale * (side ? 1.0 : -1.0) / dt);
        for (const auto& [cc, v] : half_m) jac.emplace_back(row, col0 + cc, scale * v);
      }
      if (model == HessianModel::FullNewton) {
        const double curvature = 0.25 * (2.0 * dt * w * r[c] * cfg.f.second_derivative(mid[c]) -
                                         dt * cfg.rho[c] * cfg.rho[c] * cfg.f.third_derivative(mid[c]));
        for (int s1 = 0; s1 < 2; ++s1) {
          for (int s2 = 0; s2 < 2; ++s2) {
            const Eigen::Index n1 = k + s1;
            const Eigen::Index n2 = k + s2;
            if (n1 == 0 || n1 == N || n2 == 0 || n2 == N) continue;
            extra.emplace_back((n1 - 1) * d + c, (n2 - 1) * d + c, curvature);
          }
        }
      }
    }
  }
  SparseMatrix J(N * d, (N - 1) * d);
  J.setFromTriplets(jac.begin(), jac.end());
  SparseMatrix H = SparseMatrix(J.transpose()) * J;
  if (!extra.empty()) {
    SparseMatrix E(H.rows(), H.cols());
    E.setFromTriplets(extra.begin(), extra.end());
    H += E;
  }
  return H;
}

// Solves (H + mu diag(H)) p = -g, raising mu until the factorization is
// positive definite. Returns false when no damping works.
bool newton_direction(const SparseMatrix& H, const Vector& g, Vector& p) {
  Eigen::SimplicialLDLT<SparseMatrix> solver;
  const Vector diag = H.diagonal().cwiseAbs().cwiseMax(1e-300);
  double mu = 0.0;
  for (int attempt = 0; attempt < 12; ++attempt) {
    SparseMatrix damped = H;
    if (mu > 0.0) {
      for (Eigen::Index i = 0; i < damped.rows(); ++i) damped.coeffRef(i, i) += mu * diag[i];
    }
    solver.compute(damped);
    if (solver.info() == Eigen::Success && (solver.vectorD().array() > 0.0).all()) {
      p = solver.solve(-g);
      if (solver.info() == Eigen::Success && p.allFinite() && g.dot(p) < 0.0) return true;
    }
    mu = mu == 0.0 ? 1e-8 : mu * 100.0;
  }
  return false;
}

}  // namespace

Path linear_interpolant(const LatticeState& phi0, const LatticeState& phiT, std::size_t steps,
                        double T) {
  if (phi0.size() != phiT.size()) throw ConfigError("endpoints have different lengths");
  StateMatrix states(static_cast<Eigen::Index>(steps + 1), phi0.size());
  for (std::size_t k = 0; k <= steps; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(steps);
    states.row(static_cast<Eigen::Index>(k)) = ((1.0 - s) * phi0 + s * phiT).transpose();
  }
  return Path(0.0, T / static_cast<double>(steps), std::move(states));
}

MPPResult solve_mpp(const BVPSpec& spec) {
  const LatticeConfig& cfg = spec.cfg;
  const int d = cfg.dim();
  if (spec.steps < 2) throw ConfigError("solve_mpp: need N >= 2 time steps");
  if (spec.phi0.size() != d || spec.phiT.size() != d) {
    throw ConfigError("solve_mpp: endpoints must have 2n+1 = " + std::to_string(d) + " entries");
  }
  if (!spec.phi0.allFinite() || !spec.phiT.allFinite()) throw ConfigError("solve_mpp: endpoints must be finite");

  Path path = spec.initial ? *spec.initial : linear_interpolant(spec.phi0, spec.phiT, spec.steps, cfg.T);
  if (path.steps() != spec.steps || path.dim() != d) {
    throw ConfigError("solve_mpp: initial path does not match the grid");
  }
  path.states.row(0) = spec.phi0.transpose();
  path.states.row(static_cast<Eigen::Index>(spec.steps)) = spec.phiT.transpose();

  const auto& opt = spec.options;
  MPPResult result;
  result.tolerance = opt.gradient_tolerance.value_or(1e-8 * d * static_cast<double>(spec.steps));

  double action = om_action(path, cfg).total;
  Vector g = flatten_gradient(om_gradient(path, cfg));
  double gnorm = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  result.history.push_back({0, action, gnorm, "init"});

  Path trial = path;
  auto try_direction = [&](const Vector& x, const Vector& p, double& new_action) {
    const double slope = g.dot(p);
    double step = 1.0;
    for (std::size_t b = 0; b <= opt.max_backtracks; ++b, step *= 0.5) {
      scatter_interior(x + step * p, trial);
      const double candidate = om_action(trial, cfg).total;
      if (std::isfinite(candidate) && candidate <= action + opt.armijo * step * slope) {
        new_action = candidate;
        return true;
      }
    }
    return false;
  };

  std::size_t it = 0;
  while (gnorm > result.tolerance && it < opt.max_iterations) {
    ++it;
    const Vector x = flatten_interior(path);
    const SparseMatrix H = assemble_hessian(path, cfg, opt.hessian);
    double new_action = action;
    std::string kind = "newton";
    Vector p;
    bool accepted = newton_direction(H, g, p) && try_direction(x, p, new_action);
    if (!accepted) {
      kind = "gradient";
      p = -g.cwiseQuotient(H.diagonal().cwiseAbs().cwiseMax(1e-300));
      accepted = try_direction(x, p, new_action);
    }
    if (!accepted) break;  // stalled: no descent direction decreases the action
    path.states = trial.states;
    action = new_action;
    g = flatten_gradient(om_gradient(path, cfg));
    gnorm = g.cwiseAbs().maxCoeff();
    result.history.push_back({it, action, gnorm, kind});
  }

  result.iterations = it;
  result.gradient_norm = gnorm;
  result.converged = gnorm <= result.tolerance;
  result.action = om_action(path, cfg);
  result.path = std::move(path);
  return result;
}

std::vector<double> action_along_homotopy(const LatticeConfig& cfg, const Path& a, const Path& b,
                                          std::size_t m) {
  if (a.states.rows() != b.states.rows() || a.dim() != b.dim() || a.dt != b.dt) {
    throw ConfigError("action_along_homotopy: paths must share the grid");
  }
  const auto last = a.states.rows() - 1;
  if (a.states.row(0) != b.states.row(0) || a.states.row(last) != b.states.row(last)) {
    throw ConfigError("action_along_homotopy: paths must share both endpoints");
  }
  if (m < 2) throw ConfigError("action_along_homotopy: need m >= 2 samples");
  std::vector<double> out;
  out.reserve(m);
  Path mixed = a;
  for (std::size_t j = 0; j < m; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(m - 1);
    mixed.states = (1.0 - s) * a.states + s * b.states;
    out.push_back(om_action(mixed, cfg).total);
  }
  return out;
}

}  // namespace omlat
