#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omlat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitStatisticalPower = 4;

/// Runs the `omlat` tool in-process; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace omlat::cli
