#pragma once

#include <string>
#include <vector>

#include "omlat/noise_coefficient.hpp"
#include "omlat/nonlinearity.hpp"
#include "omlat/types.hpp"

namespace omlat {

/// Truncated lattice problem: sites -n..n with periodic wrap, horizon [0, T].
struct LatticeConfig {
  int n = 0;
  double nu = 0.1;
  double lambda = 0.4;
  PolynomialNonlinearity f;
  Vector g;    // forcing, length 2n+1
  NoiseCoefficient q;
  Weights rho;  // length 2n+1, all > 0
  double T = 1.0;

  int dim() const noexcept { return 2 * n + 1; }
  int site(int column) const noexcept { return column - n; }

  /// Throws ConfigError on violated invariants (including q_i(t) = 0 on a
  /// sampling grid of [0, T]). Returns non-fatal warnings, e.g. a failed
  /// monotonicity grid check for f.
  std::vector<std::string> validate() const;
};

/// Config with g = 0 and rho = 1 sized for `n`.
LatticeConfig make_config(int n, double nu, double lambda, PolynomialNonlinearity f,
                          NoiseCoefficient q, double T);

double weighted_norm(const Vector& u, const Weights& rho);
double weighted_inner(const Vector& u, const Vector& v, const Weights& rho);

/// (A u)_i = -u_{i-1} + 2 u_i - u_{i+1} with periodic wrap.
Vector apply_A(const Vector& u);
/// (B u)_i = u_{i+1} - u_i with periodic wrap.
Vector apply_B(const Vector& u);
/// (B^T u)_i = u_{i-1} - u_i with periodic wrap.
Vector apply_BT(const Vector& u);

Eigen::MatrixXd dense_A(int dim);
Eigen::MatrixXd dense_B(int dim);

/// nu * A + lambda * I as a dense matrix.
Eigen::MatrixXd linear_operator(const LatticeConfig& cfg);

/// F(u) = -f(u) + g (componentwise f).
Vector forcing(const Vector& u, const LatticeConfig& cfg);

/// -(nu A + lambda I) u - f(u) + g.
Vector drift(const Vector& u, const LatticeConfig& cfg);

}  // namespace omlat
