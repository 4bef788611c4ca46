#include "nilp/families.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "nilp/errors.hpp"
#include "nilp/sampling.hpp"

namespace nilp {
namespace {

void check_family_id(int family) {
  if (family < 1 || family > kFamilyCount) {
    throw PreconditionError("unknown family id " + std::to_string(family) + " (expected 1.." +
                            std::to_string(kFamilyCount) + ")");
  }
}

bool divides(Int d, Int x) { return x % d == 0; }

// Reduced parameter values, keyed by name.
class Params {
 public:
  Params(const FamilySpec& spec, Int p) : spec_(spec), p_(p) {}

  Int get(const std::string& name, int exponent) const {
    return mod(spec_.param(name), ipow(p_, exponent));
  }

 private:
  const FamilySpec& spec_;
  Int p_;
};

const std::vector<std::string>& pair_names() {
  static const std::vector<std::string> names{"xx", "xy", "yx", "yy"};
  return names;
}

// Nullspace of a 2x4 matrix over F_p, as a list of basis vectors.
std::vector<std::array<Int, 4>> nullspace_2x4(std::array<std::array<Int, 4>, 2> m, Int p) {
  std::array<int, 2> pivot_col{-1, -1};
  int rank = 0;
  for (int col = 0; col < 4 && rank < 2; ++col) {
    int sel = -1;
    for (int row = rank; row < 2; ++row) {
      if (mod(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)], p) != 0) sel = row;
    }
    if (sel < 0) continue;
    std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(sel)]);
    auto& pr = m[static_cast<std::size_t>(rank)];
    const Int inv = mod_inv(pr[static_cast<std::size_t>(col)], p);
    for (auto& v : pr) v = mul_mod(v, inv, p);
    for (int row = 0; row < 2; ++row) {
      if (row == rank) continue;
      auto& other = m[static_cast<std::size_t>(row)];
      const Int f = mod(other[static_cast<std::size_t>(col)], p);
      for (std::size_t k = 0; k < 4; ++k) other[k] = mod(other[k] - f * pr[k], p);
    }
    pivot_col[static_cast<std::size_t>(rank)] = col;
    ++rank;
  }
  std::vector<std::array<Int, 4>> basis;
  for (int free = 0; free < 4; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.begin() + rank, free) != pivot_col.begin() + rank) continue;
    std::array<Int, 4> v{};
    v[static_cast<std::size_t>(free)] = 1;
    for (int row = 0; row < rank; ++row) {
      v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(row)])] =
          mod(-m[static_cast<std::size_t>(row)][static_cast<std::size_t>(free)], p);
    }
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

Int FamilySpec::param(const std::string& name) const {
  auto it = params.find(name);
  return it == params.end() ? 0 : it->second;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) os << (i ? "; " : "") << violations[i];
  return os.str();
}

Shape family_shape(int family, Int p) {
  check_family_id(family);
  if (family <= 3) return Shape::elementary(p);
  if (family <= 6) return Shape::cyclic_cube(p);
  return Shape::square(p);
}

std::vector<std::string> family_parameters(int family, Item7Form form) {
  check_family_id(family);
  switch (family) {
    case 1:
    case 10:
      return {"a", "b", "c", "d", "e", "f", "g", "h"};
    case 2: {
      std::vector<std::string> out;
      for (const auto& n : pair_names()) out.push_back("alpha_" + n);
      for (const auto& n : pair_names()) out.push_back("beta_" + n);
      return out;
    }
    case 3: {
      std::vector<std::string> out;
      for (const auto& n : pair_names()) out.push_back("beta_" + n);
      return out;
    }
    case 4:
      return {"a", "b", "c", "e", "g"};
    case 5:
      return {"a"};
    case 6:
      return {"a", "c", "e", "g"};
    case 7:
      return form == Item7Form::canonical ? std::vector<std::string>{"a", "b", "c", "d"}
                                          : std::vector<std::string>{"c", "d", "e", "f", "h"};
    case 8:
      return {"c", "e", "g", "h"};
    case 9:
      return {"a", "b", "alpha"};
  }
  return {};
}

ValidationReport validate(const FamilySpec& spec, Item10Mode mode) {
  check_family_id(spec.family);
  ValidationReport report;
  const Int p = spec.p;
  if (!is_prime(p) || p > kMaxPrime) {
    report.violations.push_back("p=" + std::to_string(p) + " is not a supported prime");
    return report;
  }
  const auto allowed = family_parameters(spec.family, spec.form);
  for (const auto& [name, value] : spec.params) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      report.violations.push_back("unknown parameter '" + name + "'");
    }
  }
  if (spec.form != Item7Form::canonical && spec.family != 7) {
    report.violations.push_back("the summary form applies to family 7 only");
  }

  const Params P(spec, p);
  const Int p2 = p * p;
  const Int p3 = p2 * p;
  auto need = [&](bool holds, const std::string& what) {
    if (!holds) report.violations.push_back(what);
  };

  switch (spec.family) {
    case 1: {
      const Int a = P.get("a", 1), b = P.get("b", 1), c = P.get("c", 1), d = P.get("d", 1);
      const Int e = P.get("e", 1), f = P.get("f", 1), g = P.get("g", 1), h = P.get("h", 1);
      need(a || b || c || d, "a,b,c,d not all zero");
      need(e || f || g || h, "e,f,g,h not all zero");
      need(mod(c * g - b * h, p) == mod(b * g - d * f, p), "cg-bh=bg-df");
      need(mod(b * e - c * f, p) == mod(c * e - a * h, p), "be-cf=ce-ah");
      break;
    }
    case 2: {
      std::vector<std::pair<Int, Int>> pairs;
      for (const auto& n : pair_names()) pairs.emplace_back(P.get("alpha_" + n, 1), P.get("beta_" + n, 1));
      const auto nonzero = std::count_if(pairs.begin(), pairs.end(), [](auto q) { return q.first || q.second; });
      need(nonzero >= 2, "at least two pairs (alpha_uv, beta_uv) nonzero");
      bool independent = false;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
          const Int det = mod(pairs[i].first * pairs[j].second - pairs[i].second * pairs[j].first, p);
          independent = independent || det != 0;
        }
      }
      need(independent, "pairs (alpha_uv, beta_uv) not all multiples of one another");
      break;
    }
    case 3: {
      bool any = false;
      for (const auto& n : pair_names()) any = any || P.get("beta_" + n, 1) != 0;
      need(any, "at least one beta_uv nonzero");
      break;
    }
    case 4: {
      const Int a = P.get("a", 3), b = P.get("b", 1), c = P.get("c", 3), e = P.get("e", 3), g = P.get("g", 3);
      need(divides(p2, c), "p^2 | c");
      need(divides(p2, e), "p^2 | e");
      need(divides(p2, g), "p^2 | g");
      need(divides(p, a), "p | a");
      need(divides(p3, b * g), "p^3 | bg");
      if (b != 0) report.warnings.push_back("b != 0: with A^[3] != 0 and x, y outside A^[2] one has b = 0");
      if (b == 0 && divides(p2, a)) report.warnings.push_back("p^2 | a with b = 0 gives A^[3] = 0 (family 6)");
      break;
    }
    case 5: {
      const Int a = P.get("a", 3);
      need(divides(p2, a), "p^2 | a");
      need(a != 0, "a != 0 mod p^3");
      break;
    }
    case 6: {
      const Int a = P.get("a", 3), c = P.get("c", 3), e = P.get("e", 3), g = P.get("g", 3);
      need(divides(p2, a), "p^2 | a");
      need(divides(p2, c), "p^2 | c");
      need(divides(p2, e), "p^2 | e");
      need(divides(p2, g), "p^2 | g");
      need(a || c || e || g, "a,c,e,g not all zero mod p^3");
      break;
    }
    case 7: {
      // In summary letters, y.x^... maps onto the canonical constants as
      // a = f, b = e, c = d, d = c.
      Int a, b, c, d;
      if (spec.form == Item7Form::canonical) {
        a = P.get("a", 2), b = P.get("b", 2), c = P.get("c", 2), d = P.get("d", 2);
        need(divides(p, a), "p | a");
        need(divides(p, b), "p | b");
        need(divides(p, c), "p | c");
        need(divides(p, d), "p | d");
        need(a || c, "a, c not both zero mod p^2");
      } else {
        const Int sc = P.get("c", 2), sd = P.get("d", 2), se = P.get("e", 2), sf = P.get("f", 2);
        const Int sh = P.get("h", 2);
        a = sf, b = se, c = sd, d = sc;
        need(divides(p, sc), "p | c");
        need(divides(p, sd), "p | d");
        need(divides(p, se), "p | e");
        need(divides(p, sf), "p | f");
        need(divides(p, sh), "p | h");
        need(sd || sf, "d, f not both zero mod p^2");
      }
      if (a && c && divides(p, a) && divides(p, c)) {
        // a = alpha c with alpha a unit; alpha is determined mod p.
        const Int alpha = mul_mod(a / p, mod_inv(c / p, p), p);
        need(alpha != 0 && mod(b - alpha * d, p2) == 0,
             spec.form == Item7Form::canonical ? "a = alpha c and b = alpha d for a unit alpha"
                                               : "f = alpha d and e = alpha c for a unit alpha");
      }
      break;
    }
    case 8: {
      const Int c = P.get("c", 2), e = P.get("e", 2), g = P.get("g", 2), h = P.get("h", 2);
      need(divides(p, c), "p | c");
      need(divides(p, e), "p | e");
      need(divides(p, h), "p | h");
      need(!divides(p, g), "p does not divide g");
      need(mod(c + h, p2) != 0 || mod(e + h, p2) != 0, "c+h or e+h nonzero mod p^2 (A^[3] != 0)");
      break;
    }
    case 9: {
      const Int a = P.get("a", 2), b = P.get("b", 2), alpha = P.get("alpha", 2);
      need(!divides(p, b), "p does not divide b");
      need(mod(a + alpha * b, p2) == 0, "a = -alpha b mod p^2 (A^[3] = 0)");
      break;
    }
    case 10: {
      bool any = false;
      for (const char* n : {"a", "b", "c", "d", "e", "f", "g", "h"}) {
        const Int v = P.get(n, 2);
        any = any || v != 0;
        if (mode == Item10Mode::divisible) {
          need(divides(p, v), std::string("p | ") + n);
        } else {
          need(!divides(p, v), std::string("p does not divide ") + n);
        }
      }
      need(any, "a..h not all zero mod p^2");
      if (mode == Item10Mode::summary_strict) {
        report.warnings.push_back("summary_strict: the A^[3] = 0 derivation requires p | a..h");
      }
      break;
    }
  }
  return report;
}

PreLieRing build_unchecked(const FamilySpec& spec) {
  const Shape shape = family_shape(spec.family, spec.p);
  SCTable t(shape.rank());
  auto v = [&](const std::string& name) { return spec.param(name); };
  auto set = [&](int i, int j, std::initializer_list<Int> coeffs) { t.set(i, j, Elem(coeffs)); };

  switch (spec.family) {
    case 1: {
      // x, y, z, w = 0, 1, 2, 3
      set(0, 0, {0, 0, v("a"), 0});
      set(0, 1, {0, 0, v("b"), 0});
      set(1, 0, {0, 0, v("c"), 0});
      set(1, 1, {0, 0, v("d"), 0});
      set(0, 2, {0, 0, 0, v("f")});
      set(1, 2, {0, 0, 0, v("h")});
      set(2, 0, {0, 0, 0, v("e")});
      set(2, 1, {0, 0, 0, v("g")});
      break;
    }
    case 2:
    case 3: {
      const auto& names = pair_names();
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          const auto& n = names[static_cast<std::size_t>(2 * i + j)];
          const Int alpha = spec.family == 2 ? v("alpha_" + n) : 0;
          set(i, j, {0, 0, alpha, v("beta_" + n)});
        }
      }
      break;
    }
    case 4:
      set(0, 0, {v("a"), v("b")});
      set(0, 1, {v("c"), 0});
      set(1, 0, {v("e"), 0});
      set(1, 1, {v("g"), 0});
      break;
    case 5:
      set(0, 0, {v("a"), 0});
      break;
    case 6:
      set(0, 0, {v("a"), 0});
      set(0, 1, {v("c"), 0});
      set(1, 0, {v("e"), 0});
      set(1, 1, {v("g"), 0});
      break;
    case 7:
      if (spec.form == Item7Form::canonical) {
        // basis (y, y^2)
        set(0, 0, {0, 1});
        set(0, 1, {v("a"), v("b")});
        set(1, 0, {v("c"), v("d")});
        set(1, 1, {0, 2 * v("c") - v("a")});
      } else {
        set(0, 0, {2 * v("d") - v("f"), 0});
        set(0, 1, {v("c"), v("d")});
        set(1, 0, {v("e"), v("f")});
        set(1, 1, {1, v("h")});
      }
      break;
    case 8:
      set(0, 1, {v("c"), 0});
      set(1, 0, {v("e"), 0});
      set(1, 1, {v("g"), v("h")});
      break;
    case 9: {
      // u.v = phi(u) phi(v) (a x + b y) with phi(x) = 1, phi(y) = alpha.
      const Int a = v("a"), b = v("b"), al = v("alpha");
      const Int m = shape.modulus(0);
      const Int al2 = mul_mod(al, al, m);
      set(0, 0, {a, b});
      set(0, 1, {mul_mod(al, a, m), mul_mod(al, b, m)});
      set(1, 0, {mul_mod(al, a, m), mul_mod(al, b, m)});
      set(1, 1, {mul_mod(al2, a, m), mul_mod(al2, b, m)});
      break;
    }
    case 10:
      set(0, 0, {v("a"), v("b")});
      set(0, 1, {v("c"), v("d")});
      set(1, 0, {v("e"), v("f")});
      set(1, 1, {v("g"), v("h")});
      break;
  }
  return PreLieRing(shape, std::move(t));
}

PreLieRing build(const FamilySpec& spec, Item10Mode mode) {
  const ValidationReport report = validate(spec, mode);
  if (!report.ok()) {
    throw ConstraintError("family " + std::to_string(spec.family) + " constraints violated: " + report.summary());
  }
  return build_unchecked(spec);
}

std::vector<FamilySpec> catalog_sample(Int p, int family, int count, std::uint64_t seed) {
  check_family_id(family);
  if (!is_prime(p) || p > kMaxPrime) throw PreconditionError("p must be a prime <= " + std::to_string(kMaxPrime));
  std::mt19937_64 rng(mix64(seed ^ mix64(static_cast<std::uint64_t>(family) << 32U) ^
                               static_cast<std::uint64_t>(p)));
  auto draw = [&rng](Int n) { return static_cast<Int>(rng() % static_cast<std::uint64_t>(n)); };
  auto unit = [&](Int m) {
    Int u = 0;
    while (u % p == 0) u = draw(m);
    return u;
  };
  const Int p2 = p * p;

  std::vector<FamilySpec> out;
  while (static_cast<int>(out.size()) < count) {
    FamilySpec s{family, p, {}, Item7Form::canonical};
    auto& q = s.params;
    switch (family) {
      case 1: {
        do {
          for (const char* n : {"a", "b", "c", "d"}) q[n] = draw(p);
        } while (!(q["a"] || q["b"] || q["c"] || q["d"]));
        const Int a = q["a"], b = q["b"], c = q["c"], d = q["d"];
        // Both relations are linear in (e, f, g, h).
        const auto basis = nullspace_2x4({{{0, d, c - b, -b}, {b - c, -c, 0, a}}}, p);
        std::array<Int, 4> efgh{};
        while (std::all_of(efgh.begin(), efgh.end(), [](Int x) { return x == 0; })) {
          efgh = {};
          for (const auto& vec : basis) {
            const Int coef = draw(p);
            for (std::size_t k = 0; k < 4; ++k) efgh[k] = mod(efgh[k] + coef * vec[k], p);
          }
        }
        q["e"] = efgh[0], q["f"] = efgh[1], q["g"] = efgh[2], q["h"] = efgh[3];
        break;
      }
      case 2:
        do {
          for (const auto& n : pair_names()) q["alpha_" + n] = draw(p), q["beta_" + n] = draw(p);
        } while (!validate(s).ok());
        break;
      case 3:
        do {
          for (const auto& n : pair_names()) q["beta_" + n] = draw(p);
        } while (!validate(s).ok());
        break;
      case 4:
        q["a"] = p * draw(p2);
        q["c"] = p2 * draw(p);
        q["e"] = p2 * draw(p);
        q["g"] = p2 * draw(p);
        q["b"] = 0;
        if (draw(2) == 1) {
          q["b"] = 1 + draw(p - 1);
          q["g"] = 0;
        }
        break;
      case 5:
        q["a"] = p2 * (1 + draw(p - 1));
        break;
      case 6:
        do {
          for (const char* n : {"a", "c", "e", "g"}) q[n] = p2 * draw(p);
        } while (!validate(s).ok());
        break;
      case 7:
        switch (draw(3)) {
          case 0:
            q["a"] = p * (1 + draw(p - 1)), q["c"] = 0;
            q["b"] = p * draw(p), q["d"] = p * draw(p);
            break;
          case 1:
            q["a"] = 0, q["c"] = p * (1 + draw(p - 1));
            q["b"] = p * draw(p), q["d"] = p * draw(p);
            break;
          default: {
            const Int alpha = 1 + draw(p - 1);
            q["c"] = p * (1 + draw(p - 1)), q["d"] = p * draw(p);
            q["a"] = mod(alpha * q["c"], p2), q["b"] = mod(alpha * q["d"], p2);
          }
        }
        break;
      case 8:
        do {
          q["c"] = p * draw(p), q["e"] = p * draw(p), q["h"] = p * draw(p);
          q["g"] = unit(p2);
        } while (!validate(s).ok());
        break;
      case 9:
        q["b"] = unit(p2);
        q["alpha"] = draw(p2);
        q["a"] = mod(-q["alpha"] * q["b"], p2);
        break;
      case 10:
        do {
          for (const char* n : {"a", "b", "c", "d", "e", "f", "g", "h"}) q[n] = p * draw(p);
        } while (!validate(s).ok());
        break;
    }
    if (!validate(s).ok()) throw InvariantError("catalog_sample drew an invalid spec: " + validate(s).summary());
    out.push_back(std::move(s));
  }
  return out;
}

std::string advertised_chain_summary(int family) {
  check_family_id(family);
  switch (family) {
    case 1:
      return "A^[4]=0, 2 generators";
    case 2:
      return "A^[2]!=0, A^[3]=0, 2 generators";
    case 3:
      return "A^[2]!=0, A^[3]=0, 3 generators";
    case 4:
      return "A^[4]=0; A^[3]!=0 when b=0 and p^2 does not divide a";
    case 5:
    case 6:
      return "A^[2]!=0, A^[3]=0";
    case 7:
      return "A^[4]!=0, A^[5]=0, A^[3]=pA, A^[4]=pA^[2]";
    case 8:
      return "A^[3]!=0, A^[4]=0";
    case 9:
      return "A^[2]!=0, A^[3]=0, 1 generator";
    case 10:
      return "A^[2]!=0, A^[3]=0, 2 generators";
  }
  return {};
}

std::vector<std::string> check_advertised_chains(const FamilySpec& spec, const PreLieRing& ring) {
  check_family_id(spec.family);
  std::vector<std::string> failures;
  const Chain chain = strong_chain(ring);
  if (!chain.nilpotent) {
    std::string orders;
    for (auto o : chain.orders()) orders += (orders.empty() ? "" : ",") + std::to_string(o);
    failures.push_back("not nilpotent: strong chain orders " + orders);
    return failures;
  }
  const int n = chain.index();
  auto need = [&](bool holds, const std::string& what) {
    if (!holds) failures.push_back(what + " (nilpotency index " + std::to_string(n) + ")");
  };
  auto gens = [&](int expected) {
    const int g = generator_count(ring);
    if (g != expected) {
      failures.push_back("generated by " + std::to_string(g) + " elements, expected " + std::to_string(expected));
    }
  };
  const Int p = spec.p;

  switch (spec.family) {
    case 1:
      need(n <= 4, "A^[4]=0");
      gens(2);
      break;
    case 2:
      need(n == 3, "A^[2]!=0 and A^[3]=0");
      gens(2);
      break;
    case 3:
      need(n == 3, "A^[2]!=0 and A^[3]=0");
      gens(3);
      break;
    case 4:
      need(n <= 4, "A^[4]=0");
      if (mod(spec.param("b"), p) == 0 && mod(spec.param("a"), p * p) != 0) need(n == 4, "A^[3]!=0");
      break;
    case 5:
    case 6:
    case 9:
    case 10:
      need(n == 3, "A^[2]!=0 and A^[3]=0");
      if (spec.family == 9) gens(1);
      if (spec.family == 10) gens(2);
      break;
    case 7: {
      need(n == 5, "A^[4]!=0 and A^[5]=0");
      if (n == 5) {
        const Subgroup whole = chain.term(1);
        need(chain.term(3) == whole.scaled(p), "A^[3]=pA");
        need(chain.term(4) == chain.term(2).scaled(p), "A^[4]=pA^[2]");
      }
      break;
    }
    case 8:
      need(n == 4, "A^[3]!=0 and A^[4]=0");
      break;
  }
  return failures;
}

}  // namespace nilp
