#pragma once

#include <string>
#include <vector>

#include "omlat/lattice.hpp"
#include "omlat/path.hpp"

namespace omlat {

struct IntervalContribution {
  double drift = 0.0;
  double trace = 0.0;
};

/// Discretized Onsager-Machlup action
///   int ||Q^{-1} (phi' + (nu A + lambda) phi - F(phi))||_rho^2 dt
///     + int Tr_rho(D F(phi)) dt
/// with the midpoint rule on each grid interval. No 1/2 prefactor.
struct OMReport {
  double drift_term = 0.0;
  double trace_term = 0.0;
  double total = 0.0;
  double dt = 0.0;
  int n = 0;
  std::vector<IntervalContribution> per_interval;
};

/// r_k = (phi_{k+1} - phi_k)/dt - drift(phi_{k+1/2}).
Vector residual(const Path& path, std::size_t k, const LatticeConfig& cfg);

/// sum_i rho_i^2 (-f'(phi_i)).
double trace_term(const Vector& state, const LatticeConfig& cfg);

/// Continuous integrand at (phi, phi') and time t.
double om_integrand(const Vector& state, const Vector& velocity, double t,
                    const LatticeConfig& cfg);

/// Throws DegeneracyError if |q_i| < 1e-12 at any interval midpoint.
OMReport om_action(const Path& path, const LatticeConfig& cfg);

/// d(total)/d(phi_k) for interior k = 1..N-1; row k-1 of the result.
StateMatrix om_gradient(const Path& path, const LatticeConfig& cfg);

std::string to_json(const OMReport& report);

}  // namespace omlat
