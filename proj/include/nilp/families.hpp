#pragma once

// Constructors and validators for the ten families of nilpotent pre-Lie rings
// of order p^4:
//
//   1-3   C_p^4           (basis x, y, z, w)
//   4-6   C_{p^3} x C_p   (basis x of order p^3, y of order p)
//   7-10  C_{p^2} x C_{p^2}
//
// Family 7 has two presentations. The canonical one uses the basis {y, y^2}
// with
//     y.y = y^2,  y.y^2 = a y + b y^2,  y^2.y = c y + d y^2,
//     y^2.y^2 = (2c - a) y^2,           p | a, b, c, d,
// the summary one uses the basis {x, y} and constants c, d, e, f, h with
//     [i,j][k,l] = [2ikd - ikf + ilc + jke + jl, ild + jkf + jlh].

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilp/modarith.hpp"
#include "nilp/prelie.hpp"

namespace nilp {

inline constexpr int kFamilyCount = 10;

enum class Item7Form { canonical, summary };

/// Family 10's divisibility: the derivation requires p | a..h (default);
/// `summary_strict` tests the summary's printed "p does not divide a..h".
enum class Item10Mode { divisible, summary_strict };

struct FamilySpec {
  int family = 0;
  Int p = 0;
  std::map<std::string, Int> params;
  Item7Form form = Item7Form::canonical;

  Int param(const std::string& name) const;
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Additive shape of a family: 1-3 -> [1,1,1,1], 4-6 -> [3,1], 7-10 -> [2,2].
Shape family_shape(int family, Int p);

/// Parameter names a family accepts.
std::vector<std::string> family_parameters(int family, Item7Form form = Item7Form::canonical);

/// Constraint check. Throws PreconditionError for an unknown family id.
ValidationReport validate(const FamilySpec& spec, Item10Mode mode = Item10Mode::divisible);

/// validate + build_unchecked; throws ConstraintError listing violations.
PreLieRing build(const FamilySpec& spec, Item10Mode mode = Item10Mode::divisible);

/// Transcribes the family's product formula with the given constants, no
/// constraint checks.
PreLieRing build_unchecked(const FamilySpec& spec);

/// `count` seeded specs, each passing validate.
std::vector<FamilySpec> catalog_sample(Int p, int family, int count, std::uint64_t seed);

/// The radical-chain facts a family advertises, e.g. A^[3] = 0 or
/// A^[3] = pA. Returns one line per property that fails.
std::vector<std::string> check_advertised_chains(const FamilySpec& spec, const PreLieRing& ring);

/// Brief description of what check_advertised_chains asserts.
std::string advertised_chain_summary(int family);

}  // namespace nilp
