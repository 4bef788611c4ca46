#pragma once

// Braces on the supported additive shapes. A brace is given by its star
// operation a * b = a o b - a - b, which is additive in b; implementations
// either evaluate it from a pre-Lie ring through flows or read it from a
// table of a o x_j over all elements a and generators x_j.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nilp/modarith.hpp"
#include "nilp/prelie.hpp"
#include "nilp/report.hpp"

namespace nilp {

class BraceImpl {
 public:
  virtual ~BraceImpl() = default;
  virtual Elem star(const Elem& a, const Elem& b) const = 0;
  /// The o-inverse of a when the construction knows it in closed form.
  virtual std::optional<Elem> known_inverse(const Elem&) const { return std::nullopt; }
  virtual std::string backing() const = 0;
};

/// The pre-Lie ring a brace was built from, and the flow parameters used.
struct BraceProvenance {
  PreLieRing ring;
  int nilpotency_index = 0;
  Int xi = 0;
};

class Brace {
 public:
  Brace(Shape shape, std::shared_ptr<const BraceImpl> impl, std::optional<BraceProvenance> provenance = {});

  /// a o b = a + b.
  static Brace trivial(const Shape& shape);
  /// rows[index(a) * r + j] = a o x_j. Star is extended to all b by
  /// additivity in the right argument.
  static Brace from_circle_table(const Shape& shape, const std::vector<Elem>& rows,
                                 std::optional<BraceProvenance> provenance = {});

  const Shape& shape() const { return shape_; }
  const std::optional<BraceProvenance>& provenance() const { return provenance_; }
  std::string backing() const { return impl_->backing(); }

  Elem star(const Elem& a, const Elem& b) const { return impl_->star(a, b); }
  Elem circle(const Elem& a, const Elem& b) const;
  std::optional<Elem> known_inverse(const Elem& a) const { return impl_->known_inverse(a); }

  /// a o x_j for every element a (index order) and generator j.
  std::vector<Elem> circle_table(int threads = 0) const;
  /// Same brace backed by its circle table; keeps the provenance.
  Brace materialized(int threads = 0) const;

 private:
  Shape shape_;
  std::shared_ptr<const BraceImpl> impl_;
  std::optional<BraceProvenance> provenance_;
};

struct BraceCheckOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  /// Scan for o-inverses by brute force even when p > 7.
  bool exhaustive_inverses = false;
};

/// Identity (exhaustive), o-inverses (exhaustive scan for p <= 7 or when
/// requested, otherwise the closed-form inverse from provenance checked for
/// every element), compatibility a o (b + c) + a = a o b + a o c for all a
/// and generators b, c plus sampled triples, and o-associativity on sampled
/// triples.
Report check_brace_axioms(const Brace& b, const BraceCheckOptions& opts = {});

/// Product of subgroups under star: generated by a * h for every element a
/// of the left side and every generator h of the right side (star is
/// additive only on the right).
Subgroup star_product(const Brace& b, const Subgroup& left, const Subgroup& right);

struct BraceChains {
  Chain left, right, strong;
};
BraceChains brace_chains(const Brace& b);
Chain brace_chain(const Brace& b, ChainKind kind);

/// a * (alpha b) = alpha (a * b) for all a, generators b and alpha in F_p.
/// Shape must be [1,1,1,1]; throws PreconditionError otherwise.
Report check_fp_brace(const Brace& b, int threads = 0);

}  // namespace nilp
