#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "omlat/lattice.hpp"
#include "omlat/noise.hpp"
#include "omlat/path.hpp"

namespace omlat {

/// Both sides of the a-priori estimate
///   sup ||u||^2 <= C (||u0||^2 + sup ||W^Q||^2
///                     + int (||W^Q||^2 + ||W^Q||^(4p+2) + ||g||^2) dt)
/// for one trajectory; C is reported as lhs / rhs.
struct BoundTerms {
  double lhs = 0.0;
  double initial_term = 0.0;
  double sup_wq_term = 0.0;
  double wq_integral = 0.0;
  double wq_power_integral = 0.0;
  double forcing_integral = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // 0 when lhs = rhs = 0
};

BoundTerms apriori_bound_terms(const Path& u, const Path& wq, const LatticeConfig& cfg);

struct BoundReport {
  std::vector<BoundTerms> trajectories;
  double max_ratio = 0.0;
};

BoundReport apriori_bound_check(std::span<const Path> u, std::span<const Path> wq,
                                const LatticeConfig& cfg);

/// Empirical constant across nested grids built from one fine Brownian path
/// per trajectory; level l uses dt_fine * 2^l.
struct BoundRefinement {
  std::vector<double> dts;
  std::vector<double> max_ratios;
  bool stable = false;  // finest ratio <= 2 x coarsest ratio
};

BoundRefinement apriori_bound_refinement(const LatticeConfig& cfg, const LatticeState& u0,
                                         std::uint64_t seed, std::size_t trajectories,
                                         std::size_t fine_steps, std::size_t levels);

/// Max weighted-norm gap between phi(s + t) from a single run and
/// phi(t, theta_s omega, phi(s)) from a restarted run on the shifted noise.
double cocycle_check(const LatticeState& u0, const NoisePath& noise, double s,
                     const LatticeConfig& cfg);

/// max_t (1/M) sum_m sum_{|i|>K} (rho_i u_i(t))^2 over an ensemble of M paths.
double truncation_tail(std::span<const Path> ensemble, int K, const Weights& rho);

/// max_t E || u^(coarse) - u^(fine) ||_rho^2 over the sites of the coarse
/// lattice (fine lattice is wider, same grid). `rho` is the coarse weight.
double truncation_mean_square_gap(std::span<const Path> coarse, std::span<const Path> fine,
                                  const Weights& rho);

/// Same problem on sites -n..n (n >= cfg.n): g and states are zero-padded,
/// rho repeats its outermost value on each side.
LatticeConfig widen_config(const LatticeConfig& cfg, int n);
LatticeState widen_state(const LatticeState& u, int n);

/// `count` trajectories with seeds derive_seed(seed, j).
std::vector<Path> simulate_ensemble(const LatticeConfig& cfg, const LatticeState& u0,
                                    std::uint64_t seed, std::size_t count, std::size_t steps);

}  // namespace omlat
