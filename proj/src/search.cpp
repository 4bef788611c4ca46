#include "nilp/search.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <span>
#include <tuple>

#include "nilp/errors.hpp"
#include "nilp/parallel.hpp"
#include "nilp/sampling.hpp"

namespace nilp {

std::uint64_t EnumSpace::size() const {
  std::uint64_t total = 1;
  for (const auto& e : entries) {
    if (e.count <= 0) return 0;
    const auto c = static_cast<std::uint64_t>(e.count);
    if (total > std::numeric_limits<std::uint64_t>::max() / c) return std::numeric_limits<std::uint64_t>::max();
    total *= c;
  }
  return total;
}

SCTable EnumSpace::candidate(std::uint64_t index) const {
  SCTable t(shape.rank());
  // The last entry varies fastest.
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    const auto c = static_cast<std::uint64_t>(it->count);
    const auto digit = static_cast<Int>(index % c);
    index /= c;
    t.entry(it->i, it->j)[it->k] = it->start + it->stride * digit;
  }
  return t;
}

EnumResult enumerate_valid(const EnumSpace& space, const EnumOptions& opts,
                           const std::function<void(std::uint64_t, const PreLieRing&)>& sink) {
  const Shape& s = space.shape;
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& e : space.entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= s.rank() || e.j >= s.rank() || e.k >= s.rank()) {
      throw PreconditionError("enumeration entry index out of range for shape " + s.str());
    }
    if (!seen.insert({e.i, e.j, e.k}).second) throw PreconditionError("enumeration entry listed twice");
    if (e.count < 0) throw PreconditionError("enumeration entry with negative count");
  }
  const std::uint64_t n = space.size();
  if (n > opts.budget) {
    throw PreconditionError("enumeration space has " +
                            (n == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                            : std::to_string(n)) +
                            " candidates, budget is " + std::to_string(opts.budget));
  }

  struct Part {
    std::uint64_t wd = 0, pl = 0, nil = 0;
    std::vector<std::uint64_t> valid;
  };
  constexpr std::uint64_t kChunk = 1024;
  std::vector<Part> parts(chunk_count(n, kChunk));
  parallel_chunks(n, kChunk, opts.threads, [&](std::uint64_t begin, std::uint64_t end, std::uint64_t c) {
    Part& part = parts[c];
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      SCTable t = space.candidate(idx);
      if (!check_well_defined(t, s).empty()) {
        ++part.wd;
        continue;
      }
      const PreLieRing ring(s, std::move(t));
      if (!check_prelie_axiom(ring).empty()) {
        ++part.pl;
        continue;
      }
      if (!strong_chain(ring).nilpotent) {
        ++part.nil;
        continue;
      }
      part.valid.push_back(idx);
    }
  });

  EnumResult out;
  out.candidates = n;
  for (auto& part : parts) {
    out.not_well_defined += part.wd;
    out.not_prelie += part.pl;
    out.not_nilpotent += part.nil;
    out.valid_indices.insert(out.valid_indices.end(), part.valid.begin(), part.valid.end());
  }
  out.valid = out.valid_indices.size();
  out.note = "out-of-regime: p = " + std::to_string(s.p()) +
             " is far below the classification hypothesis p > 5^5; counts are consistency evidence only";
  if (sink) {
    for (auto idx : out.valid_indices) sink(idx, PreLieRing(s, space.candidate(idx)));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::yes:
      return "yes";
    case IsoVerdict::no:
      return "no";
    case IsoVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

std::string orders_str(const Chain& c) {
  std::string out;
  for (auto o : c.orders()) out += (out.empty() ? "" : ",") + std::to_string(o);
  return out + (c.nilpotent ? "" : ",...");
}

class IsoSearch {
 public:
  IsoSearch(const PreLieRing& a, const PreLieRing& b, std::uint64_t budget)
      : a_(a), b_(b), s_(a.shape()), budget_(budget) {
    const int r = s_.rank();
    images_.assign(static_cast<std::size_t>(r), s_.zero());
    for (int i = 0; i < r; ++i) {
      // Candidates for x_i: elements of the same additive order, x_i first.
      const Int target = s_.modulus(i);
      std::vector<Elem> list{s_.generator(i)};
      for (std::uint64_t idx = 0; idx < s_.order(); ++idx) {
        const Elem u = s_.element(idx);
        if (u != s_.generator(i) && order_of(u) == target) list.push_back(u);
      }
      candidates_.push_back(std::move(list));
    }
    // Pair (i, j) can be tested once every k with a nonzero coefficient in
    // x_i . x_j has an image.
    ready_.resize(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        int depth = std::max(i, j);
        const Elem& c = a_.table().entry(i, j);
        for (int k = 0; k < r; ++k) {
          if (c[k] != 0) depth = std::max(depth, k);
        }
        ready_[static_cast<std::size_t>(depth)].emplace_back(i, j);
      }
    }
  }

  IsoResult run() {
    IsoResult res;
    const bool found = search(0);
    res.explored = explored_;
    if (found) {
      res.verdict = IsoVerdict::yes;
      res.witness = images_;
    } else if (exhausted_) {
      res.verdict = IsoVerdict::inconclusive;
      res.reason = "candidate budget of " + std::to_string(budget_) + " exhausted";
    } else {
      res.verdict = IsoVerdict::no;
      res.reason = "no generator assignment is a ring isomorphism";
    }
    return res;
  }

 private:
  Int order_of(const Elem& u) const {
    Int ord = 1;
    for (int k = 0; k < s_.rank(); ++k) {
      if (u[k] != 0) ord = std::max(ord, s_.modulus(k) / ipow(s_.p(), valuation(u[k], s_.p())));
    }
    return ord;
  }

  Elem image(const Elem& u) const {
    Elem out = s_.zero();
    for (int k = 0; k < s_.rank(); ++k) out = s_.add(out, s_.scale(u[k], images_[static_cast<std::size_t>(k)]));
    return out;
  }

  bool search(int depth) {
    if (depth == s_.rank()) return true;
    for (const Elem& y : candidates_[static_cast<std::size_t>(depth)]) {
      if (explored_ >= budget_) {
        exhausted_ = true;
        return false;
      }
      ++explored_;
      images_[static_cast<std::size_t>(depth)] = y;
      const std::span<const Elem> chosen(images_.data(), static_cast<std::size_t>(depth + 1));
      int expected_log = 0;
      for (int k = 0; k <= depth; ++k) expected_log += s_.exponent(k);
      if (Subgroup::span(s_, chosen).log_order() != expected_log) continue;
      bool ok = true;
      for (auto [i, j] : ready_[static_cast<std::size_t>(depth)]) {
        const Elem lhs = image(a_.table().entry(i, j));
        const Elem rhs = b_.product(images_[static_cast<std::size_t>(i)], images_[static_cast<std::size_t>(j)]);
        if (lhs != rhs) {
          ok = false;
          break;
        }
      }
      if (ok && search(depth + 1)) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  const PreLieRing& a_;
  const PreLieRing& b_;
  const Shape& s_;
  std::uint64_t budget_;
  std::uint64_t explored_ = 0;
  bool exhausted_ = false;
  std::vector<Elem> images_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<std::vector<std::pair<int, int>>> ready_;
};

}  // namespace

IsoResult isomorphic(const PreLieRing& a, const PreLieRing& b, std::uint64_t budget) {
  if (!(a.shape() == b.shape())) throw PreconditionError("isomorphism test needs rings of the same shape and prime");
  const std::pair<const char*, ChainKind> kinds[] = {
      {"strong", ChainKind::strong}, {"left", ChainKind::left}, {"right", ChainKind::right}};
  std::vector<Chain> chains_a;
  for (auto [name, kind] : kinds) {
    auto mul_a = [&a](const Subgroup& l, const Subgroup& r) { return ring_product(a, l, r); };
    auto mul_b = [&b](const Subgroup& l, const Subgroup& r) { return ring_product(b, l, r); };
    const Chain ca = compute_chain(a.shape(), kind, mul_a);
    const Chain cb = compute_chain(b.shape(), kind, mul_b);
    if (ca.orders() != cb.orders() || ca.nilpotent != cb.nilpotent) {
      return {IsoVerdict::no, {}, 0,
              std::string(name) + " chain orders differ: " + orders_str(ca) + " vs " + orders_str(cb)};
    }
    chains_a.push_back(ca);
  }
  const int ga = generator_count(a), gb = generator_count(b);
  if (ga != gb) {
    return {IsoVerdict::no, {}, 0, "generator counts differ: " + std::to_string(ga) + " vs " + std::to_string(gb)};
  }
  IsoResult res = IsoSearch(a, b, budget).run();
  if (res.verdict == IsoVerdict::yes && strong_chain(b).orders() != chains_a.front().orders()) {
    throw InvariantError("isomorphic rings with different strong chain orders");
  }
  return res;
}

// ---------------------------------------------------------------------------

PreLieRing mutate_at(const PreLieRing& ring, int i, int j, int k, Int delta) {
  SCTable t = ring.table();
  t.entry(i, j)[k] += delta;
  return PreLieRing(ring.shape(), std::move(t));
}

PreLieRing mutate(const PreLieRing& ring, std::uint64_t seed) {
  const Shape& s = ring.shape();
  auto rng = sample_rng(seed, 0);
  const auto r = static_cast<std::uint64_t>(s.rank());
  const auto pick = draw(rng, r * r * r);
  const int i = static_cast<int>(pick / (r * r)), j = static_cast<int>((pick / r) % r), k = static_cast<int>(pick % r);
  const Int m = s.modulus(k);
  const auto delta = static_cast<Int>(1 + draw(rng, static_cast<std::uint64_t>(m - 1)));
  return mutate_at(ring, i, j, k, delta);
}

}  // namespace nilp
