#include "omlat/tube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "omlat/errors.hpp"
#include "omlat/integrator.hpp"
#include "omlat/parallel.hpp"
#include "omlat/rng.hpp"

namespace omlat {

double l2rho_path_norm(const Path& a, const Path& b, const Weights& rho) {
  if (a.states.rows() != b.states.rows() || a.dim() != b.dim() || a.dim() != rho.size() ||
      std::abs(a.dt - b.dt) > 1e-12 * std::max(1.0, std::abs(a.dt)) ||
      std::abs(a.t0 - b.t0) > 1e-12 * std::max(1.0, std::abs(a.t0))) {
    throw ConfigError("l2rho_path_norm: paths are not on a common grid");
  }
  const std::size_t N = a.steps();
  double sum = 0.0;
  for (std::size_t k = 0; k <= N; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const double w = (k == 0 || k == N) ? 0.5 : 1.0;
    const Vector diff = (a.states.row(row) - b.states.row(row)).transpose();
    const double norm = weighted_norm(diff, rho);
    sum += w * norm * norm;
  }
  return std::sqrt(sum * a.dt);
}

namespace {

struct BlockCounts {
  std::vector<std::size_t> num, den, joint;
};

}  // namespace

TubeResult tube_ratio(const TubeExperiment& ex) {
  const LatticeConfig& cfg = ex.cfg;
  const Path& phi = ex.reference;
  const int d = cfg.dim();
  if (phi.dim() != d) throw ConfigError("tube_ratio: reference path width must be 2n+1 = " + std::to_string(d));
  if (phi.steps() < 1) throw ConfigError("tube_ratio: reference path needs at least one step");
  if (phi.horizon() > cfg.T * (1.0 + 1e-9) + 1e-12 || phi.t0 < 0.0) {
    throw ConfigError("tube_ratio: reference path must lie inside [0, T]");
  }
  if (ex.eps.empty()) throw ConfigError("tube_ratio: empty eps list");
  if (ex.samples == 0) throw ConfigError("tube_ratio: samples must be >= 1");
  for (double e : ex.eps) {
    if (!(e > 0.0)) throw ConfigError("tube_ratio: eps values must be > 0");
  }

  TubeResult result;
  result.action = om_action(phi, cfg);
  const double predicted = std::exp(-0.5 * result.action.total);

  const std::size_t N = phi.steps();
  const double dt = phi.dt;
  const double sqdt = std::sqrt(dt);
  const std::size_t m = ex.eps.size();
  std::vector<double> eps2(m);
  for (std::size_t j = 0; j < m; ++j) eps2[j] = ex.eps[j] * ex.eps[j];
  const double cap = *std::max_element(eps2.begin(), eps2.end());
  const std::size_t largest = static_cast<std::size_t>(std::max_element(eps2.begin(), eps2.end()) - eps2.begin());

  // q on the grid and the per-step linear map of the denominator process.
  StateMatrix qgrid(static_cast<Eigen::Index>(N), d);
  for (std::size_t k = 0; k < N; ++k) {
    for (int c = 0; c < d; ++c) qgrid(static_cast<Eigen::Index>(k), c) = cfg.q.value(cfg.site(c), phi.time(k));
  }
  const Eigen::MatrixXd L = linear_operator(cfg);
  Eigen::MatrixXd step_map;
  switch (ex.denominator) {
    case ReferenceProcess::EulerConvolution:
      step_map = Eigen::MatrixXd::Identity(d, d) - dt * L;
      break;
    case ReferenceProcess::ExactConvolution: {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(L);
      const Vector decay = (-eig.eigenvalues() * dt).array().exp();
      step_map = eig.eigenvectors() * decay.asDiagonal() * eig.eigenvectors().transpose();
      break;
    }
    case ReferenceProcess::PlainWQ:
      step_map = Eigen::MatrixXd::Identity(d, d);
      break;
  }
  const bool exact = ex.denominator == ReferenceProcess::ExactConvolution;
  const Vector rho2 = cfg.rho.array().square();
  const LatticeState u0 = phi.state(0);

  const std::size_t blocks = std::min<std::size_t>(64, ex.samples);
  std::vector<BlockCounts> counts(blocks);
  parallel_blocks(ex.samples, blocks, [&](std::size_t b, std::size_t lo, std::size_t hi) {
    BlockCounts& bc = counts[b];
    bc.num.assign(m, 0);
    bc.den.assign(m, 0);
    bc.joint.assign(m, 0);
    EulerMaruyama stepper(cfg);
    Vector u(d), x(d), dW(d), kick(d);
    for (std::size_t s = lo; s < hi; ++s) {
      const std::uint64_t seed = derive_seed(ex.seed, s);
      u = u0;
      x.setZero();
      double du2 = 0.5 * dt * rho2.dot((u - u0).cwiseAbs2());
      double dx2 = 0.0;
      bool num_out = false, den_out = false;
      for (std::size_t k = 0; k < N && !(num_out && den_out); ++k) {
        for (int c = 0; c < d; ++c) dW[c] = sqdt * keyed_normal(seed, k, cfg.site(c));
        const double w = (k + 1 == N) ? 0.5 * dt : dt;
        if (!num_out) {
          stepper.step(u, phi.time(k), dt, dW);
          if (!u.allFinite()) {
            num_out = true;
          } else {
            du2 += w * rho2.dot((u - phi.states.row(static_cast<Eigen::Index>(k + 1)).transpose()).cwiseAbs2());
            num_out = du2 > cap;
          }
        }
        if (!den_out) {
          kick = qgrid.row(static_cast<Eigen::Index>(k)).transpose().cwiseProduct(dW);
          x = exact ? Vector(step_map * (x + kick)) : Vector(step_map * x + kick);
          dx2 += w * rho2.dot(x.cwiseAbs2());
          den_out = dx2 > cap;
        }
      }
      for (std::size_t j = 0; j < m; ++j) {
        const bool in_num = !num_out && du2 <= eps2[j];
        const bool in_den = !den_out && dx2 <= eps2[j];
        bc.num[j] += in_num;
        bc.den[j] += in_den;
        bc.joint[j] += in_num && in_den;
      }
    }
  });

  const double M = static_cast<double>(ex.samples);
  result.rows.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    TubeRow& row = result.rows[j];
    row.eps = ex.eps[j];
    row.predicted = predicted;
    for (const BlockCounts& bc : counts) {
      row.num_hits += bc.num[j];
      row.den_hits += bc.den[j];
      row.joint_hits += bc.joint[j];
    }
    if (row.num_hits == 0 || row.den_hits == 0) {
      row.ratio = row.ci_lo = row.ci_hi = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double pn = static_cast<double>(row.num_hits) / M;
    const double pd = static_cast<double>(row.den_hits) / M;
    const double pj = static_cast<double>(row.joint_hits) / M;
    row.ratio = pn / pd;
    const double var = std::max(0.0, ((1.0 - pn) / pn + (1.0 - pd) / pd - 2.0 * (pj - pn * pd) / (pn * pd)) / M);
    const double half = 1.959963984540054 * std::sqrt(var);
    row.ci_lo = row.ratio * std::exp(-half);
    row.ci_hi = row.ratio * std::exp(half);
  }
  const TubeRow& top = result.rows[largest];
  if (top.num_hits < ex.min_hits || top.den_hits < ex.min_hits) {
    throw StatisticalPowerError("tube_ratio: only " + std::to_string(top.num_hits) + " numerator / " +
                                std::to_string(top.den_hits) + " denominator hits at eps = " +
                                std::to_string(top.eps) + " (need " + std::to_string(ex.min_hits) +
                                "); increase samples or eps");
  }
  return result;
}

}  // namespace omlat
