#include "omlat/rng.hpp"

#include <cmath>
#include <numbers>

namespace omlat {

namespace {

std::uint64_t key_base(std::uint64_t seed, std::uint64_t step, std::int64_t site) noexcept {
  std::uint64_t h = mix64(seed ^ 0xd1b54a32d192ed03ull);
  h = mix64(h ^ step);
  return mix64(h ^ static_cast<std::uint64_t>(site));
}

// 53 random bits, shifted off zero.
double to_open_unit(std::uint64_t h) noexcept {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double keyed_uniform(std::uint64_t seed, std::uint64_t step, std::int64_t site,
                     std::uint64_t lane) noexcept {
  return to_open_unit(mix64(key_base(seed, step, site) ^ lane));
}

double keyed_normal(std::uint64_t seed, std::uint64_t step, std::int64_t site) noexcept {
  const std::uint64_t base = key_base(seed, step, site);
  const double u1 = to_open_unit(mix64(base));
  const double u2 = to_open_unit(mix64(base ^ 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace omlat
