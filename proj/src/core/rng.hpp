#pragma once

#include <cstdint>
#include <random>

namespace posekit {

using Rng = std::mt19937_64;

// Portable [0, 1) draw; std::uniform_real_distribution output differs
// between standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_int(Rng& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

}  // namespace posekit
