#include "nilp/flows.hpp"

#include <memory>
#include <string>

#include "nilp/errors.hpp"

namespace nilp {
namespace {

// Orders up to this size get a tabulated W^{-1}.
constexpr std::uint64_t kTabulateLimit = std::uint64_t{1} << 20;

class FlowImpl final : public BraceImpl {
 public:
  FlowImpl(PreLieRing ring, FlowContext ctx) : ring_(std::move(ring)), ctx_(std::move(ctx)) {
    const Shape& s = ring_.shape();
    if (s.order() <= kTabulateLimit) {
      x_of_.reserve(s.order());
      for (std::uint64_t i = 0; i < s.order(); ++i) x_of_.push_back(w_inverse(ring_, ctx_, s.element(i)));
    }
  }

  Elem star(const Elem& a, const Elem& b) const override { return star_flow(ring_, ctx_, x_of(a), b); }

  // W(x)^{-1} = W(-x): the flows of x and -x compose to the identity.
  std::optional<Elem> known_inverse(const Elem& a) const override {
    return w_map(ring_, ctx_, ring_.shape().neg(x_of(a)));
  }

  std::string backing() const override { return "flows"; }

 private:
  Elem x_of(const Elem& a) const {
    if (!x_of_.empty()) return x_of_[ring_.shape().index(a)];
    return w_inverse(ring_, ctx_, a);
  }

  PreLieRing ring_;
  FlowContext ctx_;
  std::vector<Elem> x_of_;
};

}  // namespace

Int teichmuller_xi(Int p, int exponent) {
  const Int m = ipow(p, exponent);
  return pow_mod(primitive_root(p), static_cast<std::uint64_t>(ipow(p, exponent - 1)), m);
}

FlowContext FlowContext::make(const Shape& shape, int k, const FlowOptions& opts) {
  const Int p = shape.p();
  if (k >= p) {
    throw RegimeError("nilpotency index " + std::to_string(k) + " is not below p = " + std::to_string(p) +
                      "; the flow series needs 1/n! for n < k, and the construction is stated for k < p - 1");
  }
  FlowContext ctx;
  ctx.p = p;
  ctx.k = k;
  ctx.modulus = shape.ambient_modulus();
  ctx.fact_inv = factorial_inv_table(std::max(k - 1, 0), ctx.modulus, p);
  ctx.xi = opts.xi ? mod(*opts.xi, ctx.modulus) : teichmuller_xi(p, shape.max_exponent());
  if (ctx.xi % p == 0 || multiplicative_order(ctx.xi % p, p) != p - 1) {
    throw PreconditionError("xi = " + std::to_string(ctx.xi) + " does not have multiplicative order p - 1 mod p");
  }
  Int sum = 0;
  Int power = 1;
  for (Int i = 0; i <= p; ++i) {
    sum = (sum + power) % ctx.modulus;
    power = mul_mod(power, p, ctx.modulus);
  }
  ctx.scale = mod(-sum, ctx.modulus);
  ctx.range = opts.range;
  return ctx;
}

FlowContext FlowContext::for_ring(const PreLieRing& ring, const FlowOptions& opts) {
  return make(ring.shape(), nilpotency_index(ring), opts);
}

FlowContext FlowContext::for_brace(const Brace& brace, const FlowOptions& opts) {
  const Chain chain = brace_chain(brace, ChainKind::strong);
  if (!chain.nilpotent) throw RegimeError("brace is not strongly nilpotent; the recovery formula does not apply");
  const int k = chain.index();
  const Int p = brace.shape().p();
  if (k >= p - 1) {
    throw RegimeError("strong nilpotency index " + std::to_string(k) + " is not below p - 1 = " +
                      std::to_string(p - 1) + " (regime k < p - 1)");
  }
  return make(brace.shape(), k, opts);
}

// ---------------------------------------------------------------------------

Elem w_map(const PreLieRing& ring, const FlowContext& ctx, const Elem& x) {
  const Shape& s = ring.shape();
  Elem sum = s.reduce(x);
  Elem term = sum;
  for (int n = 2; n < ctx.k; ++n) {
    term = ring.product(x, term);
    if (term.is_zero()) break;
    sum = s.add(sum, s.scale(ctx.fact_inv[static_cast<std::size_t>(n)], term));
  }
  return sum;
}

Elem w_inverse(const PreLieRing& ring, const FlowContext& ctx, const Elem& a) {
  const Shape& s = ring.shape();
  const Elem target = s.reduce(a);
  Elem x = target;
  for (int step = 0; step <= ctx.k; ++step) {
    const Elem w = w_map(ring, ctx, x);
    if (w == target) return x;
    x = s.sub(target, s.sub(w, x));
  }
  throw InvariantError("W^{-1} iteration did not settle for " + target.str());
}

Elem star_flow(const PreLieRing& ring, const FlowContext& ctx, const Elem& x, const Elem& b) {
  const Shape& s = ring.shape();
  Elem sum = s.zero();
  Elem term = b;
  for (int n = 1; n < ctx.k; ++n) {
    term = ring.product(x, term);
    if (term.is_zero()) break;
    sum = s.add(sum, s.scale(ctx.fact_inv[static_cast<std::size_t>(n)], term));
  }
  return sum;
}

Elem circ_from_prelie(const PreLieRing& ring, const FlowContext& ctx, const Elem& a, const Elem& b) {
  const Shape& s = ring.shape();
  return s.add(star_flow(ring, ctx, w_inverse(ring, ctx, a), b), s.add(a, b));
}

CubicCircle::CubicCircle(const PreLieRing& ring) : ring_(ring), half_(0) {
  const Shape& s = ring.shape();
  if (s.p() <= 3) throw RegimeError("the cubic formula needs p > 3");
  const Chain chain = strong_chain(ring);
  if (!chain.nilpotent || chain.index() > 4) throw RegimeError("the cubic formula needs A^[4] = 0");
  half_ = mod_inv(2, s.ambient_modulus());
}

Elem CubicCircle::operator()(const Elem& a, const Elem& b) const {
  const Shape& s = ring_.shape();
  const Elem ab = ring_.product(a, b);
  const Elem correction = s.sub(ring_.product(a, ab), ring_.product(ring_.product(a, a), b));
  return s.add(s.add(s.add(a, b), ab), s.scale(half_, correction));
}

Elem circ_cubic(const PreLieRing& ring, const Elem& a, const Elem& b) { return CubicCircle(ring)(a, b); }

Brace brace_from_prelie(const PreLieRing& ring, const FlowOptions& opts) {
  FlowContext ctx = FlowContext::for_ring(ring, opts);
  BraceProvenance prov{ring, ctx.k, ctx.xi};
  return Brace(ring.shape(), std::make_shared<FlowImpl>(ring, std::move(ctx)), std::move(prov));
}

PreLieRing prelie_from_brace(const Brace& brace, const FlowContext& ctx) {
  const Shape& s = brace.shape();
  const int r = s.rank();
  const Int last = ctx.range == InverseSumRange::through_p_minus_2 ? ctx.p - 2 : ctx.p - 1;
  SCTable table(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      Elem sum = s.zero();
      for (Int t = 0; t <= last; ++t) {
        const Elem a = s.scale(pow_mod(ctx.xi, static_cast<std::uint64_t>(t), ctx.modulus), s.generator(i));
        const Elem st = brace.star(a, s.generator(j));
        sum = s.add(sum, s.scale(pow_mod(ctx.xi, static_cast<std::uint64_t>(ctx.p - 1 - t), ctx.modulus), st));
      }
      table.set(i, j, s.scale(ctx.scale, sum));
    }
  }
  const auto wd = check_well_defined(table, s);
  if (!wd.empty()) {
    throw InvariantError("recovered product is not well defined at (" + std::to_string(wd[0].i) + "," +
                         std::to_string(wd[0].j) + "," + std::to_string(wd[0].k) + "); check xi or the regime");
  }
  PreLieRing ring(s, std::move(table));
  const auto ax = check_prelie_axiom(ring);
  if (!ax.empty()) {
    throw InvariantError("recovered product fails the pre-Lie identity at (" + std::to_string(ax[0].i) + "," +
                         std::to_string(ax[0].j) + "," + std::to_string(ax[0].k) + "); check xi or the regime");
  }
  return ring;
}

}  // namespace nilp
