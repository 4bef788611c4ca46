#include "nilp/brace.hpp"

#include "nilp/errors.hpp"
#include "nilp/parallel.hpp"
#include "nilp/sampling.hpp"

namespace nilp {
namespace {

class TrivialImpl final : public BraceImpl {
 public:
  explicit TrivialImpl(Shape s) : shape_(std::move(s)) {}
  Elem star(const Elem&, const Elem&) const override { return shape_.zero(); }
  std::optional<Elem> known_inverse(const Elem& a) const override { return shape_.neg(a); }
  std::string backing() const override { return "trivial"; }

 private:
  Shape shape_;
};

class TableImpl final : public BraceImpl {
 public:
  TableImpl(Shape s, std::vector<Elem> star_rows, std::shared_ptr<const BraceImpl> origin)
      : shape_(std::move(s)), rows_(std::move(star_rows)), origin_(std::move(origin)) {}

  Elem star(const Elem& a, const Elem& b) const override {
    const int r = shape_.rank();
    const Elem* row = &rows_[shape_.index(a) * static_cast<std::uint64_t>(r)];
    std::array<Int, kMaxRank> acc{};
    for (int j = 0; j < r; ++j) {
      if (b[j] == 0) continue;
      for (int k = 0; k < r; ++k) acc[static_cast<std::size_t>(k)] += b[j] * row[j][k];
    }
    Elem out(r);
    for (int k = 0; k < r; ++k) out[k] = mod(acc[static_cast<std::size_t>(k)], shape_.modulus(k));
    return out;
  }

  std::optional<Elem> known_inverse(const Elem& a) const override {
    return origin_ ? origin_->known_inverse(a) : std::nullopt;
  }

  std::string backing() const override { return "table"; }

 private:
  Shape shape_;
  std::vector<Elem> rows_;
  std::shared_ptr<const BraceImpl> origin_;
};

Json triple(const Elem& a, const Elem& b, const Elem& c) {
  return {{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}};
}

}  // namespace

Brace::Brace(Shape shape, std::shared_ptr<const BraceImpl> impl, std::optional<BraceProvenance> provenance)
    : shape_(std::move(shape)), impl_(std::move(impl)), provenance_(std::move(provenance)) {
  if (!impl_) throw PreconditionError("brace without an implementation");
  if (provenance_ && !(provenance_->ring.shape() == shape_)) throw ShapeError("provenance ring has another shape");
}

Brace Brace::trivial(const Shape& shape) { return Brace(shape, std::make_shared<TrivialImpl>(shape)); }

Brace Brace::from_circle_table(const Shape& shape, const std::vector<Elem>& rows,
                               std::optional<BraceProvenance> provenance) {
  const auto r = static_cast<std::uint64_t>(shape.rank());
  if (rows.size() != shape.order() * r) {
    throw ShapeError("circle table has " + std::to_string(rows.size()) + " entries, expected " +
                     std::to_string(shape.order() * r));
  }
  std::vector<Elem> star_rows(rows.size());
  for (std::uint64_t idx = 0; idx < shape.order(); ++idx) {
    const Elem a = shape.element(idx);
    for (std::uint64_t j = 0; j < r; ++j) {
      const Elem& v = rows[idx * r + j];
      if (v.rank != shape.rank()) throw ShapeError("circle table entry of wrong rank");
      const Elem gen = shape.generator(static_cast<int>(j));
      star_rows[idx * r + j] = shape.sub(shape.sub(shape.reduce(v), a), gen);
    }
  }
  return Brace(shape, std::make_shared<TableImpl>(shape, std::move(star_rows), nullptr), std::move(provenance));
}

Elem Brace::circle(const Elem& a, const Elem& b) const {
  return shape_.add(shape_.add(star(a, b), a), b);
}

std::vector<Elem> Brace::circle_table(int threads) const {
  const auto r = static_cast<std::uint64_t>(shape_.rank());
  std::vector<Elem> rows(shape_.order() * r);
  parallel_chunks(shape_.order(), 1024, threads, [&](std::uint64_t begin, std::uint64_t end, std::uint64_t) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const Elem a = shape_.element(idx);
      for (std::uint64_t j = 0; j < r; ++j) rows[idx * r + j] = circle(a, shape_.generator(static_cast<int>(j)));
    }
  });
  return rows;
}

Brace Brace::materialized(int threads) const {
  const auto r = static_cast<std::uint64_t>(shape_.rank());
  std::vector<Elem> star_rows(shape_.order() * r);
  parallel_chunks(shape_.order(), 1024, threads, [&](std::uint64_t begin, std::uint64_t end, std::uint64_t) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const Elem a = shape_.element(idx);
      for (std::uint64_t j = 0; j < r; ++j) star_rows[idx * r + j] = star(a, shape_.generator(static_cast<int>(j)));
    }
  });
  return Brace(shape_, std::make_shared<TableImpl>(shape_, std::move(star_rows), impl_), provenance_);
}

// ---------------------------------------------------------------------------

Report check_brace_axioms(const Brace& b, const BraceCheckOptions& opts) {
  const Shape& s = b.shape();
  const std::uint64_t n = s.order();
  const int r = s.rank();
  Report rep;
  rep.kind = "brace-axioms";
  rep.seed = opts.seed;
  rep.budgets["samples"] = opts.samples;

  rep.add(parallel_check("identity", n, opts.threads, [&](std::uint64_t i) -> std::optional<Violation> {
    const Elem a = s.element(i);
    const Elem left = b.circle(s.zero(), a);
    const Elem right = b.circle(a, s.zero());
    if (left == a && right == a) return std::nullopt;
    return Violation{"identity", {{"a", to_json(a)}}, to_json(a), {{"0oa", to_json(left)}, {"ao0", to_json(right)}}};
  }));

  const bool scan = s.p() <= 7 || opts.exhaustive_inverses || !b.known_inverse(s.zero());
  rep.budgets["inverse_method"] = scan ? "exhaustive-scan" : "closed-form";
  rep.add(parallel_check("inverse", n, opts.threads, [&](std::uint64_t i) -> std::optional<Violation> {
    const Elem a = s.element(i);
    std::optional<Elem> inv;
    if (scan) {
      for (std::uint64_t k = 0; k < n && !inv; ++k) {
        const Elem c = s.element(k);
        if (b.circle(a, c).is_zero()) inv = c;
      }
    } else {
      inv = b.known_inverse(a);
    }
    if (!inv) return Violation{"inverse", {{"a", to_json(a)}}, "b with a o b = 0", nullptr};
    const Elem right = b.circle(a, *inv);
    const Elem left = b.circle(*inv, a);
    if (left.is_zero() && right.is_zero()) return std::nullopt;
    return Violation{"inverse", {{"a", to_json(a)}, {"b", to_json(*inv)}}, {{"aob", to_json(s.zero())}, {"boa", to_json(s.zero())}},
                     {{"aob", to_json(right)}, {"boa", to_json(left)}}};
  }));

  auto compatibility = [&](const Elem& a, const Elem& x, const Elem& y) -> std::optional<Violation> {
    const Elem lhs = s.add(b.circle(a, s.add(x, y)), a);
    const Elem rhs = s.add(b.circle(a, x), b.circle(a, y));
    if (lhs == rhs) return std::nullopt;
    return Violation{"compatibility", triple(a, x, y), to_json(rhs), to_json(lhs)};
  };
  const auto rr = static_cast<std::uint64_t>(r * r);
  rep.add(parallel_check("compatibility-basis", n * rr, opts.threads, [&](std::uint64_t i) {
    const auto pair = i % rr;
    return compatibility(s.element(i / rr), s.generator(static_cast<int>(pair / static_cast<std::uint64_t>(r))),
                         s.generator(static_cast<int>(pair % static_cast<std::uint64_t>(r))));
  }));
  rep.add(parallel_check("compatibility-sampled", opts.samples, opts.threads, [&](std::uint64_t i) {
    auto rng = sample_rng(opts.seed, i);
    const Elem a = random_elem(s, rng), x = random_elem(s, rng), y = random_elem(s, rng);
    return compatibility(a, x, y);
  }));
  rep.add(parallel_check("associativity-sampled", opts.samples, opts.threads,
                         [&](std::uint64_t i) -> std::optional<Violation> {
                           auto rng = sample_rng(opts.seed ^ 0xa55a5aa5ULL, i);
                           const Elem a = random_elem(s, rng), x = random_elem(s, rng), y = random_elem(s, rng);
                           const Elem lhs = b.circle(b.circle(a, x), y);
                           const Elem rhs = b.circle(a, b.circle(x, y));
                           if (lhs == rhs) return std::nullopt;
                           return Violation{"associativity", triple(a, x, y), to_json(rhs), to_json(lhs)};
                         }));
  return rep;
}

// ---------------------------------------------------------------------------

Subgroup star_product(const Brace& b, const Subgroup& left, const Subgroup& right) {
  const Shape& s = b.shape();
  const auto hs = right.generators();
  std::vector<Elem> gens;
  Subgroup acc = Subgroup::trivial(s);
  left.for_each_element([&](const Elem& a) {
    for (const auto& h : hs) {
      Elem v = b.star(a, h);
      if (!v.is_zero() && !acc.contains(v)) {
        gens.push_back(v);
        acc = Subgroup::span(s, gens);
        gens = acc.generators();
      }
    }
  });
  return acc;
}

Chain brace_chain(const Brace& b, ChainKind kind) {
  return compute_chain(b.shape(), kind,
                       [&b](const Subgroup& l, const Subgroup& r) { return star_product(b, l, r); });
}

BraceChains brace_chains(const Brace& b) {
  return {brace_chain(b, ChainKind::left), brace_chain(b, ChainKind::right), brace_chain(b, ChainKind::strong)};
}

Report check_fp_brace(const Brace& b, int threads) {
  const Shape& s = b.shape();
  if (s.exponents() != std::vector<int>{1, 1, 1, 1}) {
    throw PreconditionError("F_p-brace check needs shape [1,1,1,1], got " + s.str());
  }
  Report rep;
  rep.kind = "fp-brace";
  const auto r = static_cast<std::uint64_t>(s.rank());
  const auto p = static_cast<std::uint64_t>(s.p());
  rep.add(parallel_check("fp-linearity", s.order() * r * p, threads, [&](std::uint64_t i) -> std::optional<Violation> {
    const auto alpha = static_cast<Int>(i % p);
    const Elem x = s.generator(static_cast<int>((i / p) % r));
    const Elem a = s.element(i / (p * r));
    const Elem lhs = b.star(a, s.scale(alpha, x));
    const Elem rhs = s.scale(alpha, b.star(a, x));
    if (lhs == rhs) return std::nullopt;
    return Violation{"fp-linearity", {{"a", to_json(a)}, {"b", to_json(x)}, {"alpha", alpha}}, to_json(rhs),
                     to_json(lhs)};
  }));
  return rep;
}

}  // namespace nilp
