#include <doctest.h>

#include <algorithm>
#include <random>

#include "nilp/errors.hpp"
#include "nilp/families.hpp"
#include "nilp/prelie.hpp"
#include "oracles.hpp"

using namespace nilp;

namespace {

PreLieRing item5(Int a) {
  const Shape s = Shape::cyclic_cube(7);
  SCTable t(2);
  t.set(0, 0, {a, 0});
  return PreLieRing(s, t);
}

// Naive 128-bit evaluation of sum u_i v_j c_ijk.
Elem naive_product(const PreLieRing& ring, const Elem& u, const Elem& v) {
  const Shape& s = ring.shape();
  Elem out(s.rank());
  for (int k = 0; k < s.rank(); ++k) {
    __int128 acc = 0;
    for (int i = 0; i < s.rank(); ++i) {
      for (int j = 0; j < s.rank(); ++j) acc += static_cast<__int128>(u[i]) * v[j] * ring.table().entry(i, j)[k];
    }
    out[k] = static_cast<Int>(((acc % s.modulus(k)) + s.modulus(k)) % s.modulus(k));
  }
  return out;
}

}  // namespace

TEST_CASE("product examples") {
  const Shape s = Shape::cyclic_cube(7);
  const PreLieRing zero = PreLieRing::zero(s);
  CHECK(zero.product(s.make({5, 3}), s.make({2, 6})).is_zero());
  const PreLieRing r = item5(49);
  CHECK(r.product(s.make({1, 0}), s.make({1, 0})) == s.make({49, 0}));
  const std::map<std::string, Int> q{{"a", 49}};
  CHECK(r.product(s.make({2, 3}), s.make({5, 1})) == oracle::family_product(5, s, q, s.make({2, 3}), s.make({5, 1})));
  CHECK(r.product(s.make({2, 3}), s.make({5, 1})) == s.make({147, 0}));
}

TEST_CASE("check_well_defined examples") {
  const Shape s = Shape::cyclic_cube(7);
  SCTable t(2);
  t.set(0, 1, {1, 0});
  const auto v = check_well_defined(t, s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].i == 0);
  CHECK(v[0].j == 1);
  CHECK(v[0].k == 0);
  CHECK(v[0].required_divisor == 49);
  CHECK(check_well_defined(SCTable(2), s).empty());
  t.set(0, 1, {49, 0});
  CHECK(check_well_defined(t, s).empty());
  // x.x may use the full range; y.y lands in p^2 x only.
  SCTable u(2);
  u.set(0, 0, {1, 1});
  u.set(1, 1, {7, 0});
  CHECK(check_well_defined(u, s).size() == 1);
}

TEST_CASE("check_prelie_axiom examples") {
  CHECK(check_prelie_axiom(PreLieRing::zero(Shape::square(7))).empty());
  const Shape el = Shape::elementary(7);
  SCTable t(4);
  t.set(0, 0, {0, 0, 1, 0});
  CHECK(check_prelie_axiom(PreLieRing(el, t)).empty());

  // basis (y, y^2) with y.y^2 = p y^2, y^2.y = 0 and y^2.y^2 = y^2 in place of (2c - a) y^2 = 0
  const Shape sq = Shape::square(7);
  SCTable bad(2);
  bad.set(0, 0, {0, 1});
  bad.set(0, 1, {0, 7});
  bad.set(1, 1, {0, 1});
  const auto v = check_prelie_axiom(PreLieRing(sq, bad));
  CHECK_FALSE(v.empty());
  bool found = false;
  for (const auto& x : v) found = found || (x.i == 1 && x.j == 0 && x.k == 0);
  CHECK(found);
}

TEST_CASE("chain examples") {
  const Shape c3 = Shape::cyclic_cube(7);
  const PreLieRing zero = PreLieRing::zero(c3);
  for (const Chain& c : {strong_chain(zero), left_chain(zero), right_chain(zero)}) {
    CHECK(c.nilpotent);
    CHECK(c.orders() == std::vector<std::uint64_t>{2401, 1});
  }
  CHECK(nilpotency_index(zero) == 2);

  const PreLieRing r5 = item5(49);
  const Chain c5 = strong_chain(r5);
  CHECK(c5.orders() == std::vector<std::uint64_t>{2401, 7, 1});
  const std::vector<Elem> g{c3.make({49, 0})};
  CHECK(c5.term(2) == Subgroup::span(c3, g));
  CHECK(nilpotency_index(r5) == 3);

  const FamilySpec s7{7, 7, {{"c", 7}, {"d", 7}, {"e", 7}, {"f", 7}, {"h", 7}}, Item7Form::summary};
  const PreLieRing r7 = build(s7);
  const Chain c7 = strong_chain(r7);
  CHECK(nilpotency_index(r7) == 5);
  CHECK(c7.orders() == std::vector<std::uint64_t>{2401, 343, 49, 7, 1});
  CHECK(c7.term(4) == c7.term(2).scaled(7));
  CHECK_FALSE(c7.term(4).is_trivial());

  const PreLieRing r8 = build({8, 7, {{"c", 7}, {"e", 7}, {"g", 1}, {"h", 7}}});
  const Chain right8 = right_chain(r8);
  CHECK(right8.nilpotent);
  CHECK(right8.index() <= 4);
}

TEST_CASE("non-nilpotent tables are flagged") {
  const Shape sq = Shape::square(7);
  SCTable t(2);
  t.set(0, 0, {1, 0});  // x.x = x
  const PreLieRing r(sq, t);
  CHECK(check_prelie_axiom(r).empty());
  const Chain c = strong_chain(r);
  CHECK_FALSE(c.nilpotent);
  CHECK_THROWS_AS(c.index(), NotNilpotentError);
  CHECK_THROWS_AS(nilpotency_index(r), NotNilpotentError);
  CHECK_FALSE(left_chain(r).nilpotent);
}

TEST_CASE("property: bilinearity and the 128-bit path") {
  std::mt19937_64 rng(5);
  for (Int p : {7, 101}) {
    for (const Shape& s : {Shape::elementary(p), Shape::cyclic_cube(p), Shape::square(p)}) {
      // Random but torsion compatible: coefficient k of x_i.x_j is a
      // multiple of p^{max(0, e_k - min(e_i, e_j))}.
      SCTable t(s.rank());
      for (int i = 0; i < s.rank(); ++i) {
        for (int j = 0; j < s.rank(); ++j) {
          Elem e = oracle::random_elem(s, rng);
          for (int k = 0; k < s.rank(); ++k) {
            const int low = std::min(s.exponent(i), s.exponent(j));
            e[k] *= ipow(p, std::max(0, s.exponent(k) - low));
          }
          t.set(i, j, e);
        }
      }
      REQUIRE(check_well_defined(t, s).empty());
      const PreLieRing ring(s, t);
      for (int n = 0; n < 300; ++n) {
        const Elem u = oracle::random_elem(s, rng), v = oracle::random_elem(s, rng), w = oracle::random_elem(s, rng);
        const auto k = static_cast<Int>(rng() % 1000) - 500;
        CHECK(ring.product(u, v) == naive_product(ring, u, v));
        CHECK(ring.product(s.add(u, v), w) == s.add(ring.product(u, w), ring.product(v, w)));
        CHECK(ring.product(u, s.add(v, w)) == s.add(ring.product(u, v), ring.product(u, w)));
        CHECK(ring.product(u, s.scale(k, v)) == s.scale(k, ring.product(u, v)));
      }
    }
  }
}

TEST_CASE("property: basis check decides the identity; chains are monotone") {
  std::mt19937_64 rng(17);
  for (int family = 1; family <= kFamilyCount; ++family) {
    for (const auto& spec : catalog_sample(7, family, 5, 99)) {
      const PreLieRing ring = build(spec);
      REQUIRE(check_prelie_axiom(ring).empty());
      const Shape& s = ring.shape();
      for (int n = 0; n < 2000; ++n) {
        const Elem a = oracle::random_elem(s, rng), b = oracle::random_elem(s, rng), c = oracle::random_elem(s, rng);
        CHECK(prelie_defect(ring, a, b, c).is_zero());
      }
      const Chain st = strong_chain(ring), l = left_chain(ring), r = right_chain(ring);
      REQUIRE(st.nilpotent);
      REQUIRE(l.nilpotent);
      REQUIRE(r.nilpotent);
      for (std::size_t i = 1; i < st.terms.size(); ++i) {
        CHECK(st.terms[i - 1].contains(st.terms[i]));
        CHECK(st.terms[i - 1].order() > st.terms[i].order());
      }
      for (int i = 1; i <= st.index(); ++i) {
        CHECK(st.term(i).contains(l.term(i)));
        CHECK(st.term(i).contains(r.term(i)));
      }
    }
  }
}

TEST_CASE("property: y.(x.x) = bgx = 0 in family 4") {
  for (const auto& spec : catalog_sample(7, 4, 50, 3)) {
    const PreLieRing ring = build(spec);
    const Shape& s = ring.shape();
    const Elem x = s.generator(0), y = s.generator(1);
    CHECK(ring.product(y, ring.product(x, x)).is_zero());
  }
}
