#pragma once

// Exact arithmetic over Z/p^e and over mixed-modulus coefficient vectors
// representing elements of C_p^4, C_{p^3} x C_p and C_{p^2} x C_{p^2}.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace nilp {

using Int = std::int64_t;

inline constexpr int kMaxRank = 4;

/// Largest prime accepted by Shape. All intermediate products are taken in
/// 128-bit arithmetic, so the bound only guards runtime, not correctness.
inline constexpr Int kMaxPrime = 101;

/// Coefficient vector of an element. Unused slots beyond the rank stay zero,
/// so the defaulted comparison is representation equality.
struct Elem {
  std::array<Int, kMaxRank> c{};
  int rank = 0;

  Elem() = default;
  explicit Elem(int r) : rank(r) {}
  Elem(std::initializer_list<Int> coeffs);

  Int operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Int& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  bool is_zero() const;
  std::vector<Int> coeffs() const;
  std::string str() const;

  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

/// Additive group shape: prime p and exponents e_1..e_r, the group being
/// the direct sum of Z/p^{e_i}. Supported exponent lists are [1,1,1,1],
/// [3,1] and [2,2].
class Shape {
 public:
  Shape(Int p, std::vector<int> exponents);

  static Shape elementary(Int p) { return Shape(p, {1, 1, 1, 1}); }
  static Shape cyclic_cube(Int p) { return Shape(p, {3, 1}); }
  static Shape square(Int p) { return Shape(p, {2, 2}); }

  Int p() const { return p_; }
  int rank() const { return static_cast<int>(exponents_.size()); }
  const std::vector<int>& exponents() const { return exponents_; }
  int exponent(int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  Int modulus(int i) const { return moduli_[static_cast<std::size_t>(i)]; }
  /// p^{max e_i}: every coefficient is well defined modulo this.
  Int ambient_modulus() const { return ambient_; }
  int max_exponent() const { return max_exponent_; }
  /// Number of elements, p^4 for every supported shape.
  std::uint64_t order() const { return order_; }

  Elem zero() const { return Elem(rank()); }
  Elem generator(int i) const;

  /// Reduce arbitrary integers into canonical range; rank must match.
  Elem reduce(const Elem& raw) const;
  Elem make(std::initializer_list<Int> coeffs) const;
  bool is_canonical(const Elem& u) const;

  Elem add(const Elem& u, const Elem& v) const;
  Elem sub(const Elem& u, const Elem& v) const;
  Elem neg(const Elem& u) const;
  /// k*u for any integer k, negative values included.
  Elem scale(Int k, const Elem& u) const;

  /// Lexicographic position of u among all elements (coefficient 0 most
  /// significant) and its inverse.
  std::uint64_t index(const Elem& u) const;
  Elem element(std::uint64_t index) const;

  std::string str() const;

  friend bool operator==(const Shape& a, const Shape& b) {
    return a.p_ == b.p_ && a.exponents_ == b.exponents_;
  }

 private:
  void check_rank(const Elem& u) const;

  Int p_;
  std::vector<int> exponents_;
  std::vector<Int> moduli_;
  std::vector<std::uint64_t> strides_;
  Int ambient_ = 1;
  int max_exponent_ = 0;
  std::uint64_t order_ = 1;
};

bool is_prime(Int n);

/// Canonical residue of a mod m in [0, m).
inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mul_mod(Int a, Int b, Int m);
Int pow_mod(Int base, std::uint64_t exp, Int m);
Int ipow(Int base, int exp);

/// Multiplicative inverse of a modulo m; throws ArithmeticError when
/// gcd(a, m) != 1.
Int mod_inv(Int a, Int m);

/// Entry n is (n!)^{-1} mod m for n = 0..k_max. Requires k_max < p, m a
/// power of p; throws PreconditionError otherwise.
std::vector<Int> factorial_inv_table(int k_max, Int m, Int p);

/// p-adic valuation of a (a != 0).
int valuation(Int a, Int p);

/// Smallest generator of (Z/p)^x.
Int primitive_root(Int p);

/// Multiplicative order of a modulo p (gcd(a, p) = 1).
Int multiplicative_order(Int a, Int p);

}  // namespace nilp
