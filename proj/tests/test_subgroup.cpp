#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "nilp/subgroup.hpp"
#include "oracles.hpp"

using namespace nilp;

namespace {

std::set<Elem> as_set(const Subgroup& h) {
  const auto v = h.elements();
  return {v.begin(), v.end()};
}

std::vector<Elem> random_gens(const Shape& s, std::mt19937_64& rng) {
  std::vector<Elem> gens;
  const auto count = rng() % 4;
  for (std::uint64_t i = 0; i < count; ++i) {
    Elem u = oracle::random_elem(s, rng);
    // Bias towards small-order elements so proper subgroups are common.
    const auto scale = ipow(s.p(), static_cast<int>(rng() % 3));
    gens.push_back(s.scale(scale, u));
  }
  return gens;
}

}  // namespace

TEST_CASE("span examples") {
  const Shape c3 = Shape::cyclic_cube(7);
  CHECK(Subgroup::span(c3, {}).order() == 1);
  const std::vector<Elem> g1{c3.make({49, 0})};
  const Subgroup h = Subgroup::span(c3, g1);
  CHECK(h.order() == 7);
  CHECK(as_set(h) == oracle::closure(c3, g1));
  CHECK(h.contains(c3.make({98, 0})));
  CHECK_FALSE(h.contains(c3.make({7, 0})));

  const Shape sq = Shape::square(7);
  const std::vector<Elem> g2{sq.make({7, 0}), sq.make({0, 7})};
  const Subgroup pa = Subgroup::span(sq, g2);
  CHECK(pa.order() == 49);
  CHECK(pa == Subgroup::whole(sq).scaled(7));
  CHECK(Subgroup::whole(sq).order() == 2401);
}

TEST_CASE("property: span agrees with breadth-first closure") {
  std::mt19937_64 rng(7);
  for (Int p : {2, 3, 5}) {
    for (const Shape& s : {Shape::elementary(p), Shape::cyclic_cube(p), Shape::square(p)}) {
      for (int t = 0; t < 60; ++t) {
        const auto gens = random_gens(s, rng);
        const Subgroup h = Subgroup::span(s, gens);
        const auto ref = oracle::closure(s, gens);
        CHECK(h.order() == ref.size());
        CHECK(as_set(h) == ref);
        CHECK(h.elements().size() == ref.size());
        for (int q = 0; q < 20; ++q) {
          const Elem u = oracle::random_elem(s, rng);
          CHECK(h.contains(u) == (ref.count(u) == 1));
        }
      }
    }
  }
}

TEST_CASE("property: canonical form does not depend on the generating set") {
  std::mt19937_64 rng(11);
  for (Int p : {3, 7}) {
    for (const Shape& s : {Shape::elementary(p), Shape::cyclic_cube(p), Shape::square(p)}) {
      for (int t = 0; t < 80; ++t) {
        auto gens = random_gens(s, rng);
        const Subgroup h = Subgroup::span(s, gens);
        auto other = gens;
        std::shuffle(other.begin(), other.end(), rng);
        if (other.size() >= 2) other[0] = s.add(other[0], s.scale(static_cast<Int>(rng() % 50), other[1]));
        other.push_back(s.scale(static_cast<Int>(rng() % 50), h.elements()[rng() % h.order()]));
        CHECK(Subgroup::span(s, other) == h);
        CHECK(Subgroup::span(s, h.generators()) == h);
      }
    }
  }
}

TEST_CASE("property: sums and multiples") {
  std::mt19937_64 rng(13);
  for (const Shape& s : {Shape::elementary(3), Shape::cyclic_cube(3), Shape::square(3)}) {
    for (int t = 0; t < 40; ++t) {
      const auto g1 = random_gens(s, rng), g2 = random_gens(s, rng);
      const Subgroup a = Subgroup::span(s, g1), b = Subgroup::span(s, g2);
      auto all = g1;
      all.insert(all.end(), g2.begin(), g2.end());
      CHECK(as_set(a + b) == oracle::closure(s, all));
      CHECK((a + b).contains(a));
      CHECK((a + b).contains(b));
      std::vector<Elem> tripled;
      for (const auto& g : g1) tripled.push_back(s.scale(3, g));
      CHECK(as_set(a.scaled(3)) == oracle::closure(s, tripled));
    }
  }
}
