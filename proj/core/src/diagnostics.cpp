#include "omlat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "omlat/errors.hpp"
#include "omlat/integrator.hpp"
#include "omlat/parallel.hpp"
#include "omlat/rng.hpp"

namespace omlat {

namespace {

double weighted_sq(const StateMatrix& states, Eigen::Index k, const Weights& rho) {
  return states.row(k).cwiseProduct(rho.transpose()).squaredNorm();
}

// Trapezoid weight of node k on a grid with N intervals.
double trapezoid_weight(Eigen::Index k, Eigen::Index N, double dt) {
  return (k == 0 || k == N) ? 0.5 * dt : dt;
}

}  // namespace

BoundTerms apriori_bound_terms(const Path& u, const Path& wq, const LatticeConfig& cfg) {
  if (u.states.rows() != wq.states.rows() || u.dim() != wq.dim() || u.dim() != cfg.dim()) {
    throw ConfigError("apriori_bound_terms: paths must share the grid and lattice");
  }
  BoundTerms terms;
  const auto N = static_cast<Eigen::Index>(u.steps());
  const double g_sq = cfg.g.cwiseProduct(cfg.rho).squaredNorm();
  const int power = 4 * cfg.f.growth_exponent() + 2;
  for (Eigen::Index k = 0; k <= N; ++k) {
    const double u_sq = weighted_sq(u.states, k, cfg.rho);
    const double w_sq = weighted_sq(wq.states, k, cfg.rho);
    terms.lhs = std::max(terms.lhs, u_sq);
    terms.sup_wq_term = std::max(terms.sup_wq_term, w_sq);
    const double w = trapezoid_weight(k, N, u.dt);
    terms.wq_integral += w * w_sq;
    terms.wq_power_integral += w * std::pow(std::sqrt(w_sq), power);
    terms.forcing_integral += w * g_sq;
  }
  terms.initial_term = weighted_sq(u.states, 0, cfg.rho);
  terms.rhs = terms.initial_term + terms.sup_wq_term + terms.wq_integral + terms.wq_power_integral +
              terms.forcing_integral;
  if (terms.rhs > 0.0) {
    terms.ratio = terms.lhs / terms.rhs;
  } else {
    terms.ratio = terms.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return terms;
}

BoundReport apriori_bound_check(std::span<const Path> u, std::span<const Path> wq,
                                const LatticeConfig& cfg) {
  if (u.size() != wq.size()) throw ConfigError("apriori_bound_check: ensemble sizes differ");
  BoundReport report;
  for (std::size_t j = 0; j < u.size(); ++j) {
    report.trajectories.push_back(apriori_bound_terms(u[j], wq[j], cfg));
    report.max_ratio = std::max(report.max_ratio, report.trajectories.back().ratio);
  }
  return report;
}

BoundRefinement apriori_bound_refinement(const LatticeConfig& cfg, const LatticeState& u0,
                                         std::uint64_t seed, std::size_t trajectories,
                                         std::size_t fine_steps, std::size_t levels) {
  if (levels < 1 || fine_steps % (std::size_t{1} << (levels - 1)) != 0) {
    throw ConfigError("apriori_bound_refinement: fine_steps must be divisible by 2^(levels-1)");
  }
  BoundRefinement out;
  const double dt_fine = cfg.T / static_cast<double>(fine_steps);
  out.max_ratios.assign(levels, 0.0);
  for (std::size_t l = 0; l < levels; ++l) out.dts.push_back(dt_fine * static_cast<double>(std::size_t{1} << l));
  std::vector<std::vector<double>> ratios(trajectories, std::vector<double>(levels, 0.0));
  parallel_blocks(trajectories, trajectories, [&](std::size_t j, std::size_t, std::size_t) {
    const NoisePath fine = sample_noise(derive_seed(seed, j), fine_steps, cfg.dim(), dt_fine);
    for (std::size_t l = 0; l < levels; ++l) {
      const NoisePath noise = coarsen(fine, std::size_t{1} << l);
      const Path u = integrate(u0, noise, cfg);
      const Path wq = wq_path(noise, cfg.q);
      ratios[j][l] = apriori_bound_terms(u, wq, cfg).ratio;
    }
  });
  for (const auto& r : ratios) {
    for (std::size_t l = 0; l < levels; ++l) out.max_ratios[l] = std::max(out.max_ratios[l], r[l]);
  }
  const double finest = out.max_ratios.front();
  const double coarsest = out.max_ratios.back();
  out.stable = std::isfinite(finest) && finest <= 2.0 * coarsest + 1e-300;
  return out;
}

double cocycle_check(const LatticeState& u0, const NoisePath& noise, double s,
                     const LatticeConfig& cfg) {
  const Path whole = integrate(u0, noise, cfg);
  const NoisePath shifted = shift_noise(noise, s);
  const std::size_t m = shifted.offset - noise.offset;
  const Path restarted = integrate(whole.state(m), shifted, cfg);
  double deviation = 0.0;
  for (std::size_t k = 0; k <= restarted.steps(); ++k) {
    const Vector gap = whole.state(m + k) - restarted.state(k);
    deviation = std::max(deviation, weighted_norm(gap, cfg.rho));
  }
  return deviation;
}

double truncation_tail(std::span<const Path> ensemble, int K, const Weights& rho) {
  if (ensemble.empty()) throw ConfigError("truncation_tail: empty ensemble");
  const int d = ensemble.front().dim();
  const int n = (d - 1) / 2;
  if (K < 0 || K > n) throw ConfigError("truncation_tail: need 0 <= K <= n");
  if (rho.size() != d) throw ConfigError("truncation_tail: weight length mismatch");
  const auto rows = ensemble.front().states.rows();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < rows; ++k) {
    double mean = 0.0;
    for (const Path& p : ensemble) {
      for (int c = 0; c < d; ++c) {
        if (std::abs(c - n) > K) mean += std::pow(rho[c] * p.states(k, c), 2);
      }
    }
    worst = std::max(worst, mean / static_cast<double>(ensemble.size()));
  }
  return worst;
}

double truncation_mean_square_gap(std::span<const Path> coarse, std::span<const Path> fine,
                                  const Weights& rho) {
  if (coarse.size() != fine.size() || coarse.empty()) {
    throw ConfigError("truncation_mean_square_gap: ensembles must match and be non-empty");
  }
  const int dc = coarse.front().dim();
  const int offset = (fine.front().dim() - dc) / 2;
  if (offset < 0 || rho.size() != dc) throw ConfigError("truncation_mean_square_gap: bad shapes");
  const auto rows = coarse.front().states.rows();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < rows; ++k) {
    double mean = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
      for (int c = 0; c < dc; ++c) {
        mean += std::pow(rho[c] * (coarse[j].states(k, c) - fine[j].states(k, c + offset)), 2);
      }
    }
    worst = std::max(worst, mean / static_cast<double>(coarse.size()));
  }
  return worst;
}

std::vector<Path> simulate_ensemble(const LatticeConfig& cfg, const LatticeState& u0,
                                    std::uint64_t seed, std::size_t count, std::size_t steps) {
  std::vector<Path> paths(count);
  const double dt = cfg.T / static_cast<double>(steps);
  parallel_blocks(count, count, [&](std::size_t j, std::size_t, std::size_t) {
    paths[j] = integrate(u0, sample_noise(derive_seed(seed, j), steps, cfg.dim(), dt), cfg);
  });
  return paths;
}

LatticeConfig widen_config(const LatticeConfig& cfg, int n) {
  if (n < cfg.n) throw ConfigError("widen_config: cannot narrow the lattice");
  LatticeConfig out = cfg;
  out.n = n;
  const int pad = n - cfg.n;
  const int d = out.dim();
  out.g = Vector::Zero(d);
  out.g.segment(pad, cfg.dim()) = cfg.g;
  out.rho = Weights(d);
  out.rho.head(pad).setConstant(cfg.rho[0]);
  out.rho.tail(pad).setConstant(cfg.rho[cfg.dim() - 1]);
  out.rho.segment(pad, cfg.dim()) = cfg.rho;
  return out;
}

LatticeState widen_state(const LatticeState& u, int n) {
  const int half = static_cast<int>((u.size() - 1) / 2);
  if (n < half) throw ConfigError("widen_state: cannot narrow the lattice");
  LatticeState out = LatticeState::Zero(2 * n + 1);
  out.segment(n - half, u.size()) = u;
  return out;
}

}  // namespace omlat
