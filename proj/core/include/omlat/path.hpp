#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "omlat/types.hpp"

namespace omlat {

/// Uniform-grid trajectory: row k of `states` is the state at t0 + k dt.
struct Path {
  double t0 = 0.0;
  double dt = 0.0;
  StateMatrix states;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;

  Path() = default;
  Path(double t0_, double dt_, StateMatrix states_)
      : t0(t0_), dt(dt_), states(std::move(states_)) {}

  std::size_t steps() const noexcept {
    return states.rows() == 0 ? 0 : static_cast<std::size_t>(states.rows() - 1);
  }
  int dim() const noexcept { return static_cast<int>(states.cols()); }
  double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
  double horizon() const noexcept { return time(steps()); }
  LatticeState state(std::size_t k) const { return states.row(static_cast<Eigen::Index>(k)).transpose(); }
};

/// 17 significant digits; round-trips doubles.
std::string format_real(double x);

/// Header `t,u_-n,...,u_n`, one row per grid point.
void write_path_csv(std::ostream& out, const Path& path);
void write_path_csv(const std::string& file, const Path& path);

/// Reads the CSV layout above; throws ConfigError on a malformed or
/// non-uniform grid.
Path read_path_csv(std::istream& in);
Path read_path_csv(const std::string& file);

/// Two-column `t,u_<site>` export of one site.
void write_site_slice_csv(std::ostream& out, const Path& path, int site);

}  // namespace omlat
