#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "omlat/lattice.hpp"
#include "omlat/om_action.hpp"
#include "omlat/path.hpp"

namespace omlat {

enum class HessianModel {
  GaussNewton,  // J^T W J of the residuals; trace curvature dropped
  FullNewton,   // adds residual and trace second derivatives
};

struct SolverOptions {
  std::size_t max_iterations = 200;
  /// Max-norm gradient tolerance; default 1e-8 * d * N.
  std::optional<double> gradient_tolerance;
  HessianModel hessian = HessianModel::GaussNewton;
  std::size_t max_backtracks = 50;
  double armijo = 1e-4;
};

struct BVPSpec {
  LatticeConfig cfg;
  LatticeState phi0;
  LatticeState phiT;
  std::size_t steps = 2;
  SolverOptions options;
  /// Starting path; linear interpolation between the endpoints when empty.
  std::optional<Path> initial;
};

struct IterationRecord {
  std::size_t iteration = 0;
  double action = 0.0;
  double gradient_norm = 0.0;
  std::string step;  // "init", "newton", "gradient"
};

struct MPPResult {
  Path path;
  OMReport action;
  double gradient_norm = 0.0;
  double tolerance = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

Path linear_interpolant(const LatticeState& phi0, const LatticeState& phiT, std::size_t steps,
                        double T);

/// Minimizes the discrete action over interior states with the endpoints held
/// fixed. Gauss-Newton with backtracking on the total action, falling back to
/// a scaled gradient step when the Newton direction fails to decrease it.
MPPResult solve_mpp(const BVPSpec& spec);

/// Total action along (1 - s) a + s b for s = j / (m - 1), j = 0..m-1.
std::vector<double> action_along_homotopy(const LatticeConfig& cfg, const Path& a,
                                          const Path& b, std::size_t m);

}  // namespace omlat
