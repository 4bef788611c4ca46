#include "nilp/ybe.hpp"

#include <algorithm>
#include <limits>

#include "nilp/errors.hpp"
#include "nilp/parallel.hpp"
#include "nilp/sampling.hpp"

namespace nilp {
namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

Json pair_json(const Elem& a, const Elem& b) { return Json::array({to_json(a), to_json(b)}); }

}  // namespace

Elem lambda_map(const Brace& b, const Elem& a, const Elem& x) { return b.shape().add(b.star(a, x), x); }

Solution::Solution(const Brace& b, int threads)
    : brace_(b.backing() == "table" || b.shape().order() > kSolutionTableLimit ? b : b.materialized(threads)),
      n_(b.shape().order()) {
  if (n_ > kSolutionTableLimit) return;
  const Shape& s = shape();
  lam_.assign(n_ * n_, 0);
  inv_.assign(n_ * n_, kUnset);
  std::vector<char> bad(n_, 0);
  parallel_chunks(n_, 16, threads, [&](std::uint64_t begin, std::uint64_t end, std::uint64_t) {
    for (std::uint64_t a = begin; a < end; ++a) {
      const Elem ea = s.element(a);
      for (std::uint64_t x = 0; x < n_; ++x) {
        const auto y = static_cast<std::uint32_t>(s.index(lambda_map(brace_, ea, s.element(x))));
        lam_[a * n_ + x] = y;
        if (inv_[a * n_ + y] != kUnset) bad[a] = 1;
        inv_[a * n_ + y] = static_cast<std::uint32_t>(x);
      }
    }
  });
  for (std::uint64_t a = 0; a < n_; ++a) {
    if (bad[a]) degenerate_.push_back(static_cast<std::uint32_t>(a));
  }
}

Elem Solution::lambda(const Elem& a, const Elem& x) const {
  if (tabulated()) return shape().element(lambda_index(static_cast<std::uint32_t>(shape().index(a)),
                                                       static_cast<std::uint32_t>(shape().index(x))));
  return lambda_map(brace_, a, x);
}

// lambda is a homomorphism from (A, o) to Aut(A, +), so lambda_a^{-1} is
// lambda of the o-inverse of a.
Elem Solution::inverse_of(const Elem& a) const {
  if (auto inv = brace_.known_inverse(a)) return *inv;
  const Shape& s = shape();
  for (std::uint64_t k = 0; k < s.order(); ++k) {
    const Elem c = s.element(k);
    if (brace_.circle(a, c).is_zero()) return c;
  }
  throw PreconditionError("element " + a.str() + " has no o-inverse");
}

Elem Solution::lambda_inverse(const Elem& a, const Elem& y) const {
  const Shape& s = shape();
  if (!tabulated()) return lambda_map(brace_, inverse_of(a), y);
  const auto ai = static_cast<std::uint32_t>(s.index(a));
  const std::uint32_t x = lambda_inverse_index(ai, static_cast<std::uint32_t>(s.index(y)));
  if (x == kUnset || std::binary_search(degenerate_.begin(), degenerate_.end(), ai)) {
    throw PreconditionError("lambda_" + a.str() + " is not a bijection");
  }
  return s.element(x);
}

std::pair<Elem, Elem> Solution::r(const Elem& a, const Elem& b) const {
  const Elem u = lambda(a, b);
  return {u, lambda_inverse(u, a)};
}

// ---------------------------------------------------------------------------

Report certify_solution(const Brace& b, const YbeOptions& opts) {
  const Solution sol(b, opts.threads);
  const Shape& s = sol.shape();
  const std::uint64_t n = s.order();
  Report rep;
  rep.kind = "ybe";
  rep.seed = opts.seed;
  rep.budgets["samples"] = opts.samples;
  rep.budgets["pairs"] = sol.tabulated() ? "exhaustive" : "sampled";

  if (sol.tabulated()) {
    CheckResult bij{"lambda-bijective", n, 0, {}};
    for (auto a : sol.degenerate()) {
      bij.record({"lambda-bijective", {{"a", to_json(s.element(a))}}, "bijection", "not injective"});
    }
    rep.add(std::move(bij));
  } else {
    rep.add(parallel_check("lambda-bijective", std::min<std::uint64_t>(opts.samples, 64), opts.threads,
                           [&](std::uint64_t i) -> std::optional<Violation> {
                             auto rng = sample_rng(opts.seed ^ 0x1bULL, i);
                             const Elem a = random_elem(s, rng);
                             std::vector<char> seen(n, 0);
                             for (std::uint64_t x = 0; x < n; ++x) {
                               const auto y = s.index(lambda_map(b, a, s.element(x)));
                               if (seen[y]) {
                                 return Violation{"lambda-bijective", {{"a", to_json(a)}}, "bijection", "not injective"};
                               }
                               seen[y] = 1;
                             }
                             return std::nullopt;
                           }));
  }
  if (!rep.passed()) return rep;  // r is undefined without bijective lambda maps

  rep.add(parallel_check("lambda-fixes-zero", n, opts.threads, [&](std::uint64_t i) -> std::optional<Violation> {
    const Elem a = s.element(i);
    const Elem v = sol.lambda(a, s.zero());
    if (v.is_zero()) return std::nullopt;
    return Violation{"lambda-fixes-zero", {{"a", to_json(a)}}, to_json(s.zero()), to_json(v)};
  }));

  if (sol.tabulated()) {
    const auto n32 = static_cast<std::uint32_t>(n);
    rep.add(parallel_check("involutive", n * n, opts.threads, [&](std::uint64_t i) -> std::optional<Violation> {
      const auto a = static_cast<std::uint32_t>(i / n), c = static_cast<std::uint32_t>(i % n);
      const auto [u, v] = sol.r_index(a, c);
      const auto [x, y] = sol.r_index(u, v);
      if (x == a && y == c) return std::nullopt;
      return Violation{"involutive", pair_json(s.element(a), s.element(c)), pair_json(s.element(a), s.element(c)),
                       pair_json(s.element(x), s.element(y))};
    }));
    // Second coordinate a -> lambda^{-1}_{lambda_a(b)}(a), for each fixed b.
    rep.add(parallel_check("right-nondegenerate", n, opts.threads, [&](std::uint64_t bi) -> std::optional<Violation> {
      std::vector<char> seen(n, 0);
      for (std::uint32_t a = 0; a < n32; ++a) {
        const auto v = sol.r_index(a, static_cast<std::uint32_t>(bi)).second;
        if (seen[v]) return Violation{"right-nondegenerate", {{"b", to_json(s.element(bi))}}, "bijection", "not injective"};
        seen[v] = 1;
      }
      return std::nullopt;
    }));
  } else {
    rep.add(parallel_check("involutive", opts.samples, opts.threads, [&](std::uint64_t i) -> std::optional<Violation> {
      auto rng = sample_rng(opts.seed ^ 0x2bULL, i);
      const Elem a = random_elem(s, rng), c = random_elem(s, rng);
      const auto [u, v] = sol.r(a, c);
      const auto [x, y] = sol.r(u, v);
      if (x == a && y == c) return std::nullopt;
      return Violation{"involutive", pair_json(a, c), pair_json(a, c), pair_json(x, y)};
    }));
  }

  rep.add(parallel_check("left-action", std::min<std::uint64_t>(opts.samples, 10000), opts.threads,
                         [&](std::uint64_t i) -> std::optional<Violation> {
                           auto rng = sample_rng(opts.seed ^ 0x3bULL, i);
                           const Elem a = random_elem(s, rng), c = random_elem(s, rng), x = random_elem(s, rng);
                           const Elem lhs = sol.lambda(b.circle(a, c), x);
                           const Elem rhs = sol.lambda(a, sol.lambda(c, x));
                           if (lhs == rhs) return std::nullopt;
                           return Violation{"left-action", {{"a", to_json(a)}, {"b", to_json(c)}, {"x", to_json(x)}},
                                            to_json(rhs), to_json(lhs)};
                         }));

  rep.add(parallel_check("braid", opts.samples, opts.threads, [&](std::uint64_t i) -> std::optional<Violation> {
    auto rng = sample_rng(opts.seed ^ 0x4bULL, i);
    const Elem x = random_elem(s, rng), y = random_elem(s, rng), z = random_elem(s, rng);
    // (r x id)(id x r)(r x id)
    auto [l1, l2] = sol.r(x, y);
    auto [l3, l4] = sol.r(l2, z);
    auto [l5, l6] = sol.r(l1, l3);
    // (id x r)(r x id)(id x r)
    auto [m2, m3] = sol.r(y, z);
    auto [m4, m5] = sol.r(x, m2);
    auto [m6, m7] = sol.r(m5, m3);
    if (l5 == m4 && l6 == m6 && l4 == m7) return std::nullopt;
    return Violation{"braid", Json::array({to_json(x), to_json(y), to_json(z)}),
                     Json::array({to_json(m4), to_json(m6), to_json(m7)}),
                     Json::array({to_json(l5), to_json(l6), to_json(l4)})};
  }));
  return rep;
}

Json export_solution(const Solution& sol) {
  if (!sol.tabulated()) {
    throw PreconditionError("pair-map export is limited to carriers of order <= " +
                            std::to_string(kSolutionTableLimit) + " (p <= 7)");
  }
  if (!sol.degenerate().empty()) throw PreconditionError("lambda maps are not bijective; r is undefined");
  const Shape& s = sol.shape();
  const auto n = static_cast<std::uint32_t>(s.order());
  Json j;
  j["schema"] = 1;
  j["operation"] = "yang-baxter";
  j["p"] = s.p();
  j["exponents"] = s.exponents();
  j["size"] = n;
  Json first = Json::array(), second = Json::array();
  for (std::uint32_t a = 0; a < n; ++a) {
    std::vector<std::uint32_t> f(n), g(n);
    for (std::uint32_t c = 0; c < n; ++c) std::tie(f[c], g[c]) = sol.r_index(a, c);
    first.push_back(f);
    second.push_back(g);
  }
  j["first"] = std::move(first);
  j["second"] = std::move(second);
  return j;
}

}  // namespace nilp
