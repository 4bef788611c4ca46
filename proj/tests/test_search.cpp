#include <doctest.h>

#include "nilp/errors.hpp"
#include "nilp/families.hpp"
#include "nilp/search.hpp"
#include "oracles.hpp"

using namespace nilp;

namespace {

// Family 6 at p = 3: the x-coefficients of x.x, x.y, y.x, y.y range over
// multiples of 9, the y-coefficients stay zero.
EnumSpace family6_space(Int c_stride = 9, Int c_count = 3) {
  EnumSpace space{Shape::cyclic_cube(3), {}};
  space.entries.push_back({0, 0, 0, 0, 9, 3});
  space.entries.push_back({0, 1, 0, 0, c_stride, c_count});
  space.entries.push_back({1, 0, 0, 0, 9, 3});
  space.entries.push_back({1, 1, 0, 0, 9, 3});
  return space;
}

bool passes_all(const PreLieRing& ring) {
  if (!check_well_defined(ring.table(), ring.shape()).empty()) return false;
  if (!check_prelie_axiom(ring).empty()) return false;
  return strong_chain(ring).nilpotent;
}

}  // namespace

TEST_CASE("family 6 space at p = 3") {
  const EnumSpace space = family6_space();
  CHECK(space.size() == 81);
  std::vector<std::uint64_t> seen;
  const EnumResult res = enumerate_valid(space, {}, [&](std::uint64_t i, const PreLieRing& ring) {
    seen.push_back(i);
    CHECK(nilpotency_index(ring) <= 3);
    CHECK(strong_chain(ring).term(3).is_trivial());
  });
  CHECK(res.candidates == 81);
  CHECK(res.valid == 81);
  CHECK(res.valid_indices.size() == 81);
  CHECK(seen == res.valid_indices);
  CHECK_FALSE(res.note.empty());
  // spot-check the candidate decoding: the last entry varies fastest
  CHECK(space.candidate(1).entry(1, 1) == Shape::cyclic_cube(3).make({9, 0}));
  CHECK(space.candidate(3).entry(1, 0) == Shape::cyclic_cube(3).make({9, 0}));
}

TEST_CASE("empty space") {
  EnumSpace space{Shape::cyclic_cube(3), {{0, 0, 0, 0, 1, 0}}};
  CHECK(space.size() == 0);
  const EnumResult res = enumerate_valid(space);
  CHECK(res.candidates == 0);
  CHECK(res.valid_indices.empty());
}

TEST_CASE("tables with p^2 not dividing c are excluded") {
  const EnumSpace space = family6_space(1, 27);
  const EnumResult res = enumerate_valid(space);
  CHECK(res.candidates == 27 * 27);
  for (auto i : res.valid_indices) {
    CHECK(space.candidate(i).entry(0, 1)[0] % 9 == 0);
  }
  // exactly reproduced by filtering the raw space through the checkers
  std::vector<std::uint64_t> filtered;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    if (passes_all(PreLieRing(space.shape, space.candidate(i)))) filtered.push_back(i);
  }
  CHECK(filtered == res.valid_indices);
  CHECK(res.valid == 81);
  CHECK(res.not_well_defined == 27 * 27 - 81);
}

TEST_CASE("budget and malformed spaces are refused") {
  EnumOptions small;
  small.budget = 80;
  CHECK_THROWS_AS(enumerate_valid(family6_space(), small), PreconditionError);
  EnumSpace bad{Shape::cyclic_cube(3), {{0, 0, 2, 0, 1, 3}}};
  CHECK_THROWS_AS(enumerate_valid(bad), PreconditionError);
}

TEST_CASE("isomorphism probes") {
  const PreLieRing a = build({5, 7, {{"a", 49}}});
  const IsoResult self = isomorphic(a, a);
  CHECK(self.verdict == IsoVerdict::yes);
  const Shape& s = a.shape();
  CHECK(self.witness == std::vector<Elem>{s.generator(0), s.generator(1)});

  const PreLieRing b = build({5, 7, {{"a", 98}}});
  const IsoResult ab = isomorphic(a, b);
  REQUIRE(ab.verdict == IsoVerdict::yes);
  CHECK(strong_chain(a).orders() == strong_chain(b).orders());
  // the witness is an additive map carrying products to products
  const Elem x = ab.witness[0];
  CHECK(b.product(x, x) == s.scale(49, x));

  CHECK(isomorphic(a, PreLieRing::zero(s)).verdict == IsoVerdict::no);
  CHECK(isomorphic(a, b, 1).verdict != IsoVerdict::no);
}

TEST_CASE("property: every yes keeps the chain orders") {
  const auto specs = catalog_sample(7, 9, 6, 31);
  for (std::size_t i = 0; i + 1 < specs.size(); ++i) {
    const PreLieRing a = build(specs[i]), b = build(specs[i + 1]);
    const IsoResult r = isomorphic(a, b, 200000);
    if (r.verdict == IsoVerdict::yes) {
      CHECK(strong_chain(a).orders() == strong_chain(b).orders());
      CHECK(left_chain(a).orders() == left_chain(b).orders());
      CHECK(right_chain(a).orders() == right_chain(b).orders());
    }
  }
}

TEST_CASE("mutation") {
  const Shape s = Shape::elementary(7);
  const PreLieRing z = PreLieRing::zero(s);
  const PreLieRing m = mutate(z, 5);
  int nonzero = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) nonzero += m.table().entry(i, j)[k] != 0;
    }
  }
  CHECK(nonzero == 1);
  CHECK(mutate(z, 5) == m);
  const bool all_same = mutate(z, 6) == m && mutate(z, 7) == m && mutate(z, 8) == m;
  CHECK_FALSE(all_same);

  const PreLieRing r4 = build({4, 7, {{"a", 7}, {"c", 49}}});
  const PreLieRing bumped = mutate_at(r4, 0, 1, 0, 1);
  CHECK(bumped.table().entry(0, 1)[0] == 50);
  CHECK_FALSE(check_well_defined(bumped.table(), bumped.shape()).empty());
}
