#pragma once

#include <Eigen/Core>

namespace omlat {

using Vector = Eigen::VectorXd;

/// Row k holds the lattice state at grid time t_k; columns are sites -n..n.
using StateMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A truncated lattice state (u_{-n}, ..., u_n).
using LatticeState = Vector;

/// Site weights rho_i > 0 of the weighted sequence space.
using Weights = Vector;

}  // namespace omlat
