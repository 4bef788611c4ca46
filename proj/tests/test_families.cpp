#include <doctest.h>

#include <algorithm>
#include <random>

#include "nilp/errors.hpp"
#include "nilp/families.hpp"
#include "oracles.hpp"

using namespace nilp;

namespace {

bool has(const ValidationReport& r, const std::string& what) {
  return std::find(r.violations.begin(), r.violations.end(), what) != r.violations.end();
}

// Which of well-definedness, the identity or the advertised chains fails.
std::string detected_failure(const FamilySpec& spec) {
  const PreLieRing ring = build_unchecked(spec);
  const auto wd = check_well_defined(ring.table(), ring.shape());
  if (!wd.empty()) return "well-defined";
  if (!check_prelie_axiom(ring).empty()) return "prelie-axiom";
  if (!check_advertised_chains(spec, ring).empty()) return "advertised-chains";
  return "";
}

Elem expected_product(const FamilySpec& spec, const Shape& s, const Elem& u, const Elem& v) {
  if (spec.family == 7) {
    if (spec.form == Item7Form::summary) return oracle::family7_summary(s, spec.params, u, v);
    return oracle::family7_canonical(s, spec.param("a"), spec.param("b"), spec.param("c"), spec.param("d"), u, v);
  }
  return oracle::family_product(spec.family, s, spec.params, u, v);
}

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate({4, 7, {{"a", 7}, {"c", 49}, {"e", 49}, {"g", 49}, {"b", 0}}}).ok());
  const auto bad = validate({4, 7, {{"a", 1}}});
  CHECK(has(bad, "p | a"));

  // cg - bh = bg - df and be - cf = ce - ah evaluated directly
  const Int a = 1, b = 0, c = 0, d = 0, e = 0, f = 1, g = 0, h = 0;
  CHECK(c * g - b * h == b * g - d * f);
  CHECK(b * e - c * f == c * e - a * h);
  CHECK(validate({1, 7, {{"a", a}, {"f", f}}}).ok());

  CHECK_THROWS_AS(validate({11, 7, {}}), PreconditionError);
  CHECK_THROWS_AS(validate({0, 7, {}}), PreconditionError);
  CHECK(has(validate({5, 7, {{"a", 49}, {"q", 1}}}), "unknown parameter 'q'"));
  CHECK_FALSE(validate({5, 8, {{"a", 64}}}).ok());
}

TEST_CASE("build examples") {
  const PreLieRing r5 = build({5, 7, {{"a", 49}}});
  CHECK(r5.table().entry(0, 0) == Elem{49, 0});
  CHECK(r5.table().entry(0, 1).is_zero());
  CHECK(r5.table().entry(1, 0).is_zero());
  CHECK(r5.table().entry(1, 1).is_zero());
  CHECK_THROWS_AS(build({4, 7, {{"a", 1}}}), ConstraintError);
}

TEST_CASE("family 2 with a single nonzero pair is 3-generated") {
  // x.x = z and nothing else: a pre-Lie ring with A^[3] = 0, but z is the
  // only product, so y, w and x are all needed to generate it.
  const FamilySpec spec{2, 7, {{"alpha_xx", 1}}};
  const ValidationReport v = validate(spec);
  CHECK_FALSE(v.ok());
  CHECK_THROWS_AS(build(spec), ConstraintError);
  const PreLieRing ring = build_unchecked(spec);
  CHECK(ring.table().entry(0, 0) == Elem{0, 0, 1, 0});
  CHECK(check_prelie_axiom(ring).empty());
  CHECK(nilpotency_index(ring) == 3);
  CHECK(generator_count(ring) == 3);
}

TEST_CASE("family 9 needs a = -alpha b mod p^2 for A^[3] = 0") {
  const FamilySpec spec{9, 7, {{"a", 7}, {"b", 1}, {"alpha", 0}}};
  const PreLieRing ring = build_unchecked(spec);
  const Shape& s = ring.shape();
  CHECK(ring.product(s.generator(0), s.generator(0)) == s.make({7, 1}));
  CHECK(check_prelie_axiom(ring).empty());
  // x.x = 7x + y gives (x.x).x = 49x + ... = 7(x.x) - ... so A^[3] contains 7 A^[2].
  CHECK(nilpotency_index(ring) > 3);
  CHECK_FALSE(validate(spec).ok());
  const FamilySpec fixed{9, 7, {{"a", 0}, {"b", 1}, {"alpha", 0}}};
  CHECK(validate(fixed).ok());
  CHECK(nilpotency_index(build(fixed)) == 3);
}

TEST_CASE("catalog_sample") {
  CHECK(catalog_sample(7, 4, 0, 1).empty());
  const auto s4 = catalog_sample(7, 4, 100, 1);
  CHECK(s4.size() == 100);
  for (const auto& s : s4) {
    CHECK(s.param("c") % 49 == 0);
    CHECK(s.param("e") % 49 == 0);
    CHECK(s.param("g") % 49 == 0);
    CHECK(s.param("a") % 7 == 0);
    CHECK((s.param("b") * s.param("g")) % 343 == 0);
  }
  const auto s1 = catalog_sample(7, 1, 100, 1);
  CHECK(s1.size() == 100);
  for (const auto& s : s1) {
    const Int a = s.param("a"), b = s.param("b"), c = s.param("c"), d = s.param("d");
    const Int e = s.param("e"), f = s.param("f"), g = s.param("g"), h = s.param("h");
    CHECK(((c * g - b * h) - (b * g - d * f)) % 7 == 0);
    CHECK(((b * e - c * f) - (c * e - a * h)) % 7 == 0);
    CHECK((a || b || c || d));
    CHECK((e || f || g || h));
  }
  CHECK(catalog_sample(11, 7, 20, 5) == catalog_sample(11, 7, 20, 5));
  CHECK_FALSE(catalog_sample(11, 7, 20, 5) == catalog_sample(11, 7, 20, 6));
}

TEST_CASE("property: soundness and product formulas for every family") {
  std::mt19937_64 rng(41);
  for (Int p : {7, 11}) {
    for (int family = 1; family <= kFamilyCount; ++family) {
      CAPTURE(p);
      CAPTURE(family);
      for (const auto& spec : catalog_sample(p, family, 100, 2026)) {
        REQUIRE(validate(spec).ok());
        const PreLieRing ring = build(spec);
        CHECK(check_well_defined(ring.table(), ring.shape()).empty());
        CHECK(check_prelie_axiom(ring).empty());
        const auto fails = check_advertised_chains(spec, ring);
        CHECK(fails.empty());
        const Shape& s = ring.shape();
        for (int n = 0; n < 20; ++n) {
          const Elem u = oracle::random_elem(s, rng), v = oracle::random_elem(s, rng);
          CHECK(ring.product(u, v) == expected_product(spec, s, u, v));
        }
      }
    }
  }
}

TEST_CASE("chain conformance read off the chains directly") {
  for (int family = 1; family <= kFamilyCount; ++family) {
    for (const auto& spec : catalog_sample(7, family, 30, 8)) {
      const PreLieRing ring = build(spec);
      const int n = nilpotency_index(ring);
      switch (family) {
        case 2:
        case 3:
        case 5:
        case 6:
        case 9:
        case 10:
          CHECK(n == 3);
          break;
        case 1:
        case 4:
          CHECK(n <= 4);
          break;
        case 8:
          CHECK(n == 4);
          break;
        case 7: {
          CHECK(n == 5);
          const Chain c = strong_chain(ring);
          CHECK(c.orders() == std::vector<std::uint64_t>{2401, 343, 49, 7, 1});
          CHECK(c.term(3) == Subgroup::whole(ring.shape()).scaled(7));
          CHECK(c.term(4) == c.term(2).scaled(7));
          break;
        }
      }
      if (family == 4 && spec.param("b") == 0 && spec.param("a") % 49 != 0) CHECK(n == 4);
    }
  }
}

TEST_CASE("family 7 summary letters") {
  const FamilySpec spec{7, 7, {{"c", 7}, {"d", 7}, {"e", 7}, {"f", 7}, {"h", 7}}, Item7Form::summary};
  CHECK(validate(spec).ok());
  const PreLieRing ring = build(spec);
  const Shape& s = ring.shape();
  for (std::uint64_t i = 0; i < s.order(); i += 37) {
    for (std::uint64_t j = 0; j < s.order(); j += 41) {
      CHECK(ring.product(s.element(i), s.element(j)) == oracle::family7_summary(s, spec.params, s.element(i), s.element(j)));
    }
  }
  CHECK(check_prelie_axiom(ring).empty());
  CHECK(check_advertised_chains(spec, ring).empty());
  // d and f both divisible by p^2 leave A^[4] = 0
  const FamilySpec flat{7, 7, {{"c", 7}, {"e", 7}, {"h", 7}}, Item7Form::summary};
  CHECK_FALSE(validate(flat).ok());
  CHECK(nilpotency_index(build_unchecked(flat)) < 5);
  CHECK(has(validate({7, 7, {{"c", 1}, {"d", 7}}, Item7Form::summary}), "p | c"));
}

TEST_CASE("family 10 divisibility modes") {
  const FamilySpec spec{10, 7, {{"a", 7}, {"d", 14}}};
  CHECK(validate(spec).ok());
  CHECK_FALSE(validate(spec, Item10Mode::summary_strict).ok());
  CHECK_FALSE(validate(spec, Item10Mode::summary_strict).warnings.empty());
  const FamilySpec units{10, 7, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"e", 1}, {"f", 1}, {"g", 1}, {"h", 1}}};
  CHECK(validate(units, Item10Mode::summary_strict).ok());
  CHECK_FALSE(validate(units).ok());
  // With unit constants (x.x).x = 2(x+y) != 0, so the ring cannot have A^[3] = 0.
  CHECK_FALSE(detected_failure(units).empty());
}

TEST_CASE("family 4 warnings") {
  const auto w = validate({4, 7, {{"a", 7}, {"b", 3}}});
  CHECK(w.ok());
  CHECK_FALSE(w.warnings.empty());
}

TEST_CASE("constraint necessity: one broken condition per family is detected") {
  struct Mutation {
    FamilySpec spec;
    const char* violation;
    const char* detector;
  };
  const std::vector<Mutation> cases{
      {{1, 7, {{"a", 1}, {"h", 1}}}, "be-cf=ce-ah", "prelie-axiom"},
      {{2, 7, {{"alpha_xx", 1}, {"beta_xx", 3}}}, "at least two pairs (alpha_uv, beta_uv) nonzero", "advertised-chains"},
      {{3, 7, {}}, "at least one beta_uv nonzero", "advertised-chains"},
      {{4, 7, {{"a", 7}, {"c", 50}}}, "p^2 | c", "well-defined"},
      {{5, 7, {{"a", 7}}}, "p^2 | a", "advertised-chains"},
      {{6, 7, {{"a", 49}, {"c", 7}}}, "p^2 | c", "well-defined"},
      {{7, 7, {{"a", 1}}}, "p | a", "prelie-axiom"},
      {{8, 7, {{"c", 7}, {"g", 7}}}, "p does not divide g", "advertised-chains"},
      {{9, 7, {{"a", 1}, {"b", 1}, {"alpha", 0}}}, "a = -alpha b mod p^2 (A^[3] = 0)", "advertised-chains"},
      {{10, 7, {{"a", 1}}}, "p | a", "advertised-chains"},
  };
  for (const auto& m : cases) {
    CAPTURE(m.spec.family);
    CHECK(has(validate(m.spec), m.violation));
    CHECK(detected_failure(m.spec) == m.detector);
  }
}
