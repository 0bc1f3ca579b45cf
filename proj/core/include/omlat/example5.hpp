#pragma once

#include <cstddef>

#include "omlat/lattice.hpp"
#include "omlat/mpp.hpp"
#include "omlat/path.hpp"

namespace omlat {

/// Disease-spread lattice: nu = 0.1, lambda = 0.4, f = 0.1 u^3, g = 0,
/// q_i(t) = 0.01 (31 - t + 1/(|i|+1)), T = 30.
LatticeConfig example5_config(int n = 30);

/// 0.6 exp(-i^2 / (2 sigma^2)), sigma = 8.
LatticeState example5_initial_state(int n, double amplitude = 0.6, double sigma = 8.0);

/// Gaussian bump to zero over [0, 30]; default grid dt = 0.05.
BVPSpec example5_bvp(int n = 30, std::size_t steps = 600);

bool is_example5(const LatticeConfig& cfg);

/// The hand-derived second-order Euler-Lagrange system of the example,
/// coefficients verbatim, evaluated with central differences at interior
/// grid points. Row k-1 holds node k. Throws ConfigError unless
/// is_example5(cfg) and the path spans [0, 30].
StateMatrix el_residual_example5(const Path& path, const LatticeConfig& cfg);

/// Same system with the neighbour terms carrying the q-ratio
/// q_i(t)^2 / q_{i+-1}(t)^2 that exact differentiation of the action gives.
StateMatrix el_residual_example5_consistent(const Path& path, const LatticeConfig& cfg);

}  // namespace omlat
