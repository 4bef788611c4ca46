#pragma once

// Passage between nilpotent pre-Lie rings and braces through the group of
// flows. With W(x) = x + x.x/2! + x.(x.x)/3! + ...,
//
//     W(x) * b = x.b + x.(x.b)/2! + ...,     W(x) o W(y) = W(x) * W(y) + W(x) + W(y),
//
// and the product is recovered from the brace as
//
//     a.b = s * sum_{i=0}^{p-2} xi^{p-1-i} ((xi^i a) * b),   s = -(1 + p + p^2 + ...),
//
// where xi is a unit of multiplicative order p - 1. All series are cut at
// the nilpotency index k of the ring.

#include <optional>
#include <vector>

#include "nilp/brace.hpp"
#include "nilp/modarith.hpp"
#include "nilp/prelie.hpp"

namespace nilp {

/// Upper limit of the recovery sum. The default stops at p - 2, one full
/// period of xi; through_p_minus_1 repeats the i = 0 term and does not
/// recover the product.
enum class InverseSumRange { through_p_minus_2, through_p_minus_1 };

struct FlowOptions {
  /// Unit used in the recovery sum; default is teichmuller_xi.
  std::optional<Int> xi;
  InverseSumRange range = InverseSumRange::through_p_minus_2;
};

/// g^{p^{e-1}} mod p^e for the smallest primitive root g mod p: the unique
/// (p-1)-th root of unity mod p^e congruent to g.
Int teichmuller_xi(Int p, int exponent);

struct FlowContext {
  Int p = 0;
  int k = 0;         // nilpotency index of the ring (or strong index of the brace)
  Int modulus = 0;   // ambient modulus p^{max e}
  std::vector<Int> fact_inv;  // (n!)^{-1} mod modulus, n = 0..k-1
  Int xi = 0;
  Int scale = 0;     // -(1 + p + ... + p^p) mod modulus
  InverseSumRange range = InverseSumRange::through_p_minus_2;

  /// Throws RegimeError unless k < p, PreconditionError for a bad xi.
  static FlowContext make(const Shape& shape, int k, const FlowOptions& opts = {});
  /// k = nilpotency index of the ring; NotNilpotentError if it has none.
  static FlowContext for_ring(const PreLieRing& ring, const FlowOptions& opts = {});
  /// k = strong nilpotency index of the brace, which must be < p - 1.
  static FlowContext for_brace(const Brace& brace, const FlowOptions& opts = {});
};

Elem w_map(const PreLieRing& ring, const FlowContext& ctx, const Elem& x);

/// The x with W(x) = a, by the iteration x <- a - (W(x) - x), which is exact
/// after k steps; InvariantError if it has not settled by then.
Elem w_inverse(const PreLieRing& ring, const FlowContext& ctx, const Elem& a);

/// W(x) * b = sum_{n >= 1} (1/n!) x.(x.(...(x.b))).
Elem star_flow(const PreLieRing& ring, const FlowContext& ctx, const Elem& x, const Elem& b);

/// a o b with x = w_inverse(a): star_flow(x, b) + a + b.
Elem circ_from_prelie(const PreLieRing& ring, const FlowContext& ctx, const Elem& a, const Elem& b);

/// a o b = a + b + a.b - (1/2)(a.a).b + (1/2) a.(a.b), valid when A^[4] = 0.
class CubicCircle {
 public:
  /// Throws RegimeError unless A^[4] = 0 and p > 3.
  explicit CubicCircle(const PreLieRing& ring);
  Elem operator()(const Elem& a, const Elem& b) const;

 private:
  PreLieRing ring_;
  Int half_;
};

Elem circ_cubic(const PreLieRing& ring, const Elem& a, const Elem& b);

/// Flow brace of a ring with nilpotency index k < p. For small orders the
/// inverse of W is tabulated once for every element.
Brace brace_from_prelie(const PreLieRing& ring, const FlowOptions& opts = {});

/// Evaluates the recovery sum on all generator pairs. Throws InvariantError
/// if the result is not a well-defined pre-Lie ring.
PreLieRing prelie_from_brace(const Brace& brace, const FlowContext& ctx);

}  // namespace nilp
