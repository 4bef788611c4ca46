#include "nilp/prelie.hpp"

#include <algorithm>

#include "nilp/errors.hpp"

namespace nilp {

SCTable::SCTable(int rank) : rank_(rank), entries_(static_cast<std::size_t>(rank * rank), Elem(rank)) {
  if (rank < 1 || rank > kMaxRank) throw ShapeError("table rank out of range");
}

std::size_t SCTable::flat(int i, int j) const {
  if (i < 0 || j < 0 || i >= rank_ || j >= rank_) throw ShapeError("table index out of range");
  return static_cast<std::size_t>(i * rank_ + j);
}

std::vector<WellDefinedViolation> check_well_defined(const SCTable& table, const Shape& shape) {
  if (table.rank() != shape.rank()) throw ShapeError("table rank does not match shape");
  std::vector<WellDefinedViolation> out;
  const int r = shape.rank();
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      const int low = std::min(shape.exponent(i), shape.exponent(j));
      for (int k = 0; k < r; ++k) {
        const int need = std::max(0, shape.exponent(k) - low);
        const Int divisor = ipow(shape.p(), need);
        const Int coeff = mod(table.entry(i, j)[k], shape.modulus(k));
        if (coeff % divisor != 0) out.push_back({i, j, k, coeff, divisor});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

PreLieRing::PreLieRing(Shape shape, SCTable table) : shape_(std::move(shape)), table_(std::move(table)) {
  const int r = shape_.rank();
  if (table_.rank() != r) throw ShapeError("table rank does not match shape");
  flat_.assign(static_cast<std::size_t>(r * r * r), 0);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      Elem& e = table_.entry(i, j);
      if (e.rank != r) throw ShapeError("table entry rank does not match shape");
      e = shape_.reduce(e);
      for (int k = 0; k < r; ++k) flat_[static_cast<std::size_t>((i * r + j) * r + k)] = e[k];
    }
  }
  // r^2 terms of size below ambient^3 must fit a signed 64-bit accumulator.
  const auto m = static_cast<long double>(shape_.ambient_modulus());
  fast_ = m * m * m * r * r < 4.0e18L;
}

PreLieRing PreLieRing::zero(const Shape& shape) { return PreLieRing(shape, SCTable(shape.rank())); }

Elem PreLieRing::product(const Elem& u, const Elem& v) const {
  const int r = shape_.rank();
  if (u.rank != r || v.rank != r) throw ShapeError("operand rank does not match shape");
  return fast_ ? accumulate<Int>(u, v) : accumulate<__int128>(u, v);
}

template <class Acc>
Elem PreLieRing::accumulate(const Elem& u, const Elem& v) const {
  const int r = shape_.rank();
  std::array<Acc, kMaxRank> acc{};
  const Int* t = flat_.data();
  for (int i = 0; i < r; ++i) {
    if (u[i] == 0) {
      t += r * r;
      continue;
    }
    for (int j = 0; j < r; ++j, t += r) {
      const Int uv = u[i] * v[j];
      if (uv == 0) continue;
      for (int k = 0; k < r; ++k) acc[static_cast<std::size_t>(k)] += static_cast<Acc>(uv) * t[k];
    }
  }
  Elem out(r);
  for (int k = 0; k < r; ++k) out[k] = static_cast<Int>(acc[static_cast<std::size_t>(k)] % shape_.modulus(k));
  return out;
}

Elem prelie_defect(const PreLieRing& ring, const Elem& a, const Elem& b, const Elem& c) {
  const Shape& s = ring.shape();
  const Elem lhs = s.sub(ring.product(ring.product(a, b), c), ring.product(a, ring.product(b, c)));
  const Elem rhs = s.sub(ring.product(ring.product(b, a), c), ring.product(b, ring.product(a, c)));
  return s.sub(lhs, rhs);
}

std::vector<AxiomViolation> check_prelie_axiom(const PreLieRing& ring) {
  const Shape& s = ring.shape();
  std::vector<AxiomViolation> out;
  for (int i = 0; i < s.rank(); ++i) {
    for (int j = 0; j < s.rank(); ++j) {
      for (int k = 0; k < s.rank(); ++k) {
        Elem d = prelie_defect(ring, s.generator(i), s.generator(j), s.generator(k));
        if (!d.is_zero()) out.push_back({i, j, k, d});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> Chain::orders() const {
  std::vector<std::uint64_t> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.order());
  return out;
}

int Chain::index() const {
  if (!nilpotent) throw NotNilpotentError("chain does not reach the zero subgroup");
  return static_cast<int>(terms.size());
}

const Subgroup& Chain::term(int n) const {
  if (n < 1) throw PreconditionError("chain terms are numbered from 1");
  const auto idx = static_cast<std::size_t>(n - 1);
  if (idx < terms.size()) return terms[idx];
  if (!nilpotent) throw NotNilpotentError("chain term beyond the computed range");
  return terms.back();
}

std::string to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::left:
      return "left";
    case ChainKind::right:
      return "right";
    case ChainKind::strong:
      return "strong";
  }
  return "?";
}

Chain compute_chain(const Shape& shape, ChainKind kind, const SubgroupProduct& mul) {
  // A strictly decreasing chain in a group of order p^4 has at most 5 terms;
  // the cap guards against operations whose chains are not monotone.
  constexpr std::size_t kCap = 16;
  Chain chain;
  chain.terms.push_back(Subgroup::whole(shape));
  const Subgroup whole = chain.terms.front();
  while (chain.terms.size() < kCap) {
    const std::size_t n = chain.terms.size();  // computing term n + 1
    Subgroup next = Subgroup::trivial(shape);
    switch (kind) {
      case ChainKind::left:
        next = mul(whole, chain.terms.back());
        break;
      case ChainKind::right:
        next = mul(chain.terms.back(), whole);
        break;
      case ChainKind::strong:
        for (std::size_t j = 0; j < n; ++j) next = next + mul(chain.terms[j], chain.terms[n - 1 - j]);
        break;
    }
    if (next.is_trivial()) {
      chain.terms.push_back(std::move(next));
      chain.nilpotent = true;
      return chain;
    }
    const bool repeated = next == chain.terms.back();
    chain.terms.push_back(std::move(next));
    // A nilpotent chain decreases strictly until it reaches zero.
    if (repeated) break;
  }
  chain.nilpotent = false;
  return chain;
}

Subgroup ring_product(const PreLieRing& ring, const Subgroup& left, const Subgroup& right) {
  std::vector<Elem> gens;
  const auto lg = left.generators();
  const auto rg = right.generators();
  for (const auto& g : lg) {
    for (const auto& h : rg) {
      Elem prod = ring.product(g, h);
      if (!prod.is_zero()) gens.push_back(prod);
    }
  }
  return Subgroup::span(ring.shape(), gens);
}

namespace {
Chain ring_chain(const PreLieRing& ring, ChainKind kind) {
  return compute_chain(ring.shape(), kind,
                       [&ring](const Subgroup& l, const Subgroup& r) { return ring_product(ring, l, r); });
}
}  // namespace

Chain strong_chain(const PreLieRing& ring) { return ring_chain(ring, ChainKind::strong); }
Chain left_chain(const PreLieRing& ring) { return ring_chain(ring, ChainKind::left); }
Chain right_chain(const PreLieRing& ring) { return ring_chain(ring, ChainKind::right); }

int nilpotency_index(const PreLieRing& ring) {
  const Chain chain = strong_chain(ring);
  if (!chain.nilpotent) {
    std::string orders;
    for (auto o : chain.orders()) orders += (orders.empty() ? "" : ",") + std::to_string(o);
    throw NotNilpotentError("strong chain does not reach zero (orders " + orders + ")");
  }
  return chain.index();
}

int generator_count(const PreLieRing& ring) {
  const Shape& s = ring.shape();
  const Subgroup whole = Subgroup::whole(s);
  const Subgroup square = ring_product(ring, whole, whole);
  const Subgroup frattini = square + whole.scaled(s.p());
  return whole.log_order() - frattini.log_order();
}

}  // namespace nilp
