#pragma once

// Pre-Lie rings on a mixed-modulus abelian p-group, given by structure
// constants on the additive generators.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nilp/modarith.hpp"
#include "nilp/subgroup.hpp"

namespace nilp {

/// Structure constants: entry(i, j) is x_i * x_j in generator coordinates.
class SCTable {
 public:
  explicit SCTable(int rank);

  int rank() const { return rank_; }
  const Elem& entry(int i, int j) const { return entries_[flat(i, j)]; }
  Elem& entry(int i, int j) { return entries_[flat(i, j)]; }
  void set(int i, int j, const Elem& value) { entry(i, j) = value; }

  friend bool operator==(const SCTable&, const SCTable&) = default;

 private:
  std::size_t flat(int i, int j) const;

  int rank_;
  std::vector<Elem> entries_;
};

/// Coefficient k of x_i * x_j must be divisible by p^{max(0, e_k - min(e_i, e_j))}
/// for the product to be Z-bilinear on the torsion generators.
struct WellDefinedViolation {
  int i, j, k;
  Int coefficient;
  Int required_divisor;
};

std::vector<WellDefinedViolation> check_well_defined(const SCTable& table, const Shape& shape);

/// A bilinear product on a shape. Tables that are not pre-Lie, not well
/// defined or not nilpotent are representable; the checkers below decide.
class PreLieRing {
 public:
  /// Entries are reduced into canonical range.
  PreLieRing(Shape shape, SCTable table);

  static PreLieRing zero(const Shape& shape);

  const Shape& shape() const { return shape_; }
  const SCTable& table() const { return table_; }

  /// sum_{i,j} u_i v_j (x_i * x_j), reduced.
  Elem product(const Elem& u, const Elem& v) const;

  friend bool operator==(const PreLieRing& a, const PreLieRing& b) {
    return a.shape_ == b.shape_ && a.table_ == b.table_;
  }

 private:
  template <class Acc>
  Elem accumulate(const Elem& u, const Elem& v) const;

  Shape shape_;
  SCTable table_;
  std::vector<Int> flat_;  // flat_[(i*r + j)*r + k]
  bool fast_ = true;
};

/// (a*b)*c - a*(b*c) - (b*a)*c + b*(a*c); zero iff the pre-Lie identity holds
/// on the triple.
Elem prelie_defect(const PreLieRing& ring, const Elem& a, const Elem& b, const Elem& c);

struct AxiomViolation {
  int i, j, k;
  Elem defect;
};

/// Evaluates the identity on all r^3 generator triples; the defect is
/// trilinear so this decides the identity everywhere.
std::vector<AxiomViolation> check_prelie_axiom(const PreLieRing& ring);

// ---------------------------------------------------------------------------
// Radical chains

/// Product of two subgroups under a ring or brace operation.
using SubgroupProduct = std::function<Subgroup(const Subgroup&, const Subgroup&)>;

/// A^1 = A followed by successive chain terms. When nilpotent the last term
/// is the zero subgroup and the nilpotency index equals terms.size().
struct Chain {
  std::vector<Subgroup> terms;
  bool nilpotent = false;

  std::vector<std::uint64_t> orders() const;
  /// Smallest n with A^n = 0; throws NotNilpotentError otherwise.
  int index() const;
  /// A^n for n >= 1 (the zero subgroup past the end of a nilpotent chain).
  const Subgroup& term(int n) const;
};

enum class ChainKind { left, right, strong };
std::string to_string(ChainKind kind);

/// Left:   A^{i+1} = A . A^i
/// Right:  A^{(i+1)} = A^{(i)} . A
/// Strong: A^{[i+1]} = sum_{j=1..i} A^{[j]} . A^{[i+1-j]}
/// Terms are additive subgroups. Computation stops at zero, when a nonzero
/// term repeats, or at a length cap; the last two mark the chain as not
/// nilpotent.
Chain compute_chain(const Shape& shape, ChainKind kind, const SubgroupProduct& mul);

/// Subgroup generated by g * h over echelon generators of both sides.
Subgroup ring_product(const PreLieRing& ring, const Subgroup& left, const Subgroup& right);

Chain strong_chain(const PreLieRing& ring);
Chain left_chain(const PreLieRing& ring);
Chain right_chain(const PreLieRing& ring);

/// Smallest n with A^{[n]} = 0; throws NotNilpotentError.
int nilpotency_index(const PreLieRing& ring);

/// Number of elements needed to generate the ring: log_p |A / (A^{[2]} + pA)|.
int generator_count(const PreLieRing& ring);

}  // namespace nilp
