#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "omlat/lattice.hpp"

namespace omlat {

/// Parses the key-value config format:
///
///     # comment
///     n        = 30
///     nu       = 0.1
///     lambda   = 0.4
///     f_coeffs = 0, 0.1        # c_0 x + c_1 x^3 + ...
///     p        = 1             # optional, default from f_coeffs
///     C_f      = 0.1           # optional, default sum |c_k|
///     g        = zero          # or a list of 2n+1 values
///     q_spec   = example5:0.01,31
///     rho      = uniform       # or a list of 2n+1 values
///     T        = 30
///
/// Unknown or repeated keys are errors. `table:` paths resolve relative to
/// `base_dir`.
LatticeConfig parse_config(std::string_view text,
                           const std::filesystem::path& base_dir = {});
LatticeConfig load_config(const std::filesystem::path& file);

/// `constant:<v>` | `example5:<c0>,<a>` | `decay:<c0>,<rate>` | `table:<path>`.
NoiseCoefficient parse_q_spec(std::string_view spec, int n,
                              const std::filesystem::path& base_dir = {});

/// Canonical serialization; parse_config(canonical_text(c)) reproduces c.
std::string canonical_text(const LatticeConfig& cfg);

/// FNV-1a digest of canonical_text.
std::uint64_t config_hash(const LatticeConfig& cfg);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis = 14695981039346656037ull);

/// Initial/terminal state grammar: `zero` | `const:<c>` | `gauss:<amp>,<sigma>`
/// (amp * exp(-i^2 / (2 sigma^2))) | `list:<v,...>` | `csv:<path>` (last row of a
/// path CSV).
LatticeState parse_state_spec(std::string_view spec, int n,
                              const std::filesystem::path& base_dir = {});

}  // namespace omlat
