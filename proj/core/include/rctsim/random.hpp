#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rctsim {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser. A bijection on 64-bit words with full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds `value` into `state`; injective in `value` for a fixed state.
constexpr std::uint64_t hash_combine(std::uint64_t state, std::uint64_t value) noexcept {
  return mix64(state ^ mix64(value));
}

std::uint64_t hash_string(std::string_view text) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits, so streams are
/// reproducible across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, bound) by 128-bit multiply-shift.
inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  __extension__ using u128 = unsigned __int128;
  const u128 product = static_cast<u128>(rng()) * static_cast<u128>(bound);
  return static_cast<std::size_t>(product >> 64);
}

}  // namespace rctsim
