#pragma once

// Brute-force oracles: enumeration of structure-constant tables over a
// declared space, bounded isomorphism probing, and table mutation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilp/prelie.hpp"

namespace nilp {

inline constexpr std::uint64_t kDefaultEnumBudget = 1000000000;
inline constexpr std::uint64_t kDefaultIsoBudget = 10000000;

/// Coefficient k of x_i * x_j ranges over start + stride * t, t < count.
struct EnumEntry {
  int i = 0, j = 0, k = 0;
  Int start = 0, stride = 1, count = 1;
};

/// Entries not listed are zero.
struct EnumSpace {
  Shape shape;
  std::vector<EnumEntry> entries;

  /// Number of candidate tables, saturating at UINT64_MAX.
  std::uint64_t size() const;
  SCTable candidate(std::uint64_t index) const;
};

struct EnumOptions {
  std::uint64_t budget = kDefaultEnumBudget;
  int threads = 0;
};

struct EnumResult {
  std::uint64_t candidates = 0;
  std::uint64_t valid = 0;
  std::uint64_t not_well_defined = 0;
  std::uint64_t not_prelie = 0;
  std::uint64_t not_nilpotent = 0;
  std::vector<std::uint64_t> valid_indices;
  std::string note;
};

/// Candidates passing well-definedness, the pre-Lie identity and strong
/// nilpotency, in candidate order. sink (if given) sees each valid ring in
/// that order. PreconditionError when the space exceeds the budget or is
/// malformed.
EnumResult enumerate_valid(const EnumSpace& space, const EnumOptions& opts = {},
                           const std::function<void(std::uint64_t, const PreLieRing&)>& sink = {});

enum class IsoVerdict { yes, no, inconclusive };
std::string to_string(IsoVerdict v);

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::inconclusive;
  /// Images of the generators of A under an isomorphism onto B.
  std::vector<Elem> witness;
  std::uint64_t explored = 0;
  std::string reason;
};

/// Searches additive automorphisms x_i -> y_i (y_i of the order of x_i,
/// images independent) with phi(x_i . x_j) = y_i . y_j, identity first.
/// Chain orders and generator counts are compared first. "no" is returned
/// only after the search space is exhausted.
IsoResult isomorphic(const PreLieRing& a, const PreLieRing& b, std::uint64_t budget = kDefaultIsoBudget);

/// Adds a nonzero delta to one seeded-random structure constant.
PreLieRing mutate(const PreLieRing& ring, std::uint64_t seed);
PreLieRing mutate_at(const PreLieRing& ring, int i, int j, int k, Int delta);

}  // namespace nilp
