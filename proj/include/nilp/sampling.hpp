#pragma once

// Seeded sampling. Sample i of a run depends only on (seed, i), never on
// which worker draws it.

#include <cstdint>
#include <random>

#include "nilp/modarith.hpp"

namespace nilp {

std::uint64_t mix64(std::uint64_t x);

/// Generator for sample `index` of a run seeded with `seed`.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform in [0, n); modulo reduction keeps results identical across
/// standard libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline Elem random_elem(const Shape& s, std::mt19937_64& rng) {
  return s.element(draw(rng, s.order()));
}

}  // namespace nilp
