#pragma once

#include <cstdint>

namespace omlat {

/// splitmix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Independent stream seed for trajectory `index` of an ensemble.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ull));
}

/// Uniform in (0, 1) from key (seed, step, site, lane).
double keyed_uniform(std::uint64_t seed, std::uint64_t step, std::int64_t site,
                     std::uint64_t lane) noexcept;

/// Standard normal draw that depends only on (seed, step, site).
double keyed_normal(std::uint64_t seed, std::uint64_t step, std::int64_t site) noexcept;

}  // namespace omlat
