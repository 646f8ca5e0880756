#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wslm {

// SplitMix64 step, used only to derive well-mixed child seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Derives a child seed from a sequence of words (master seed plus stream
/// indices). The result depends on every word and on their order, so distinct
/// index tuples give independent streams regardless of generation order.
inline std::uint64_t seed_mix(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (std::uint64_t w : words) {
    std::uint64_t s = h ^ (w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2));
    h = splitmix64(s);
  }
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

}  // namespace wslm
