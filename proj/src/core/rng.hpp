// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Deterministic seeding and uniform-draw helpers shared by the samplers and
// the Monte Carlo driver.  Draws are built directly on the raw mt19937_64
// output so results are identical across standard libraries.

#pragma once

#include <cstdint>
#include <random>

namespace chdet {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Well-separated child seed for logical stream `stream` of master `seed`.
inline std::uint64_t derive_stream_seed(std::uint64_t seed,
                                        std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  const std::uint64_t a = splitmix64_next(s);
  const std::uint64_t b = splitmix64_next(s);
  return a ^ (b << 1);
}

// Uniform draw in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& g) {
  return double(g() >> 11) * 0x1.0p-53;
}

}  // namespace chdet
