#include "nilp/modarith.hpp"

#include <algorithm>
#include <sstream>

#include "nilp/errors.hpp"

namespace nilp {

Elem::Elem(std::initializer_list<Int> coeffs) : rank(static_cast<int>(coeffs.size())) {
  if (coeffs.size() > static_cast<std::size_t>(kMaxRank)) {
    throw ShapeError("element rank exceeds " + std::to_string(kMaxRank));
  }
  std::copy(coeffs.begin(), coeffs.end(), c.begin());
}

bool Elem::is_zero() const {
  return std::all_of(c.begin(), c.begin() + rank, [](Int x) { return x == 0; });
}

std::vector<Int> Elem::coeffs() const { return {c.begin(), c.begin() + rank}; }

std::string Elem::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rank; ++i) os << (i ? "," : "") << c[static_cast<std::size_t>(i)];
  os << ']';
  return os.str();
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Int ipow(Int base, int exp) {
  Int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

Int mul_mod(Int a, Int b, Int m) {
  auto r = static_cast<__int128>(a) * static_cast<__int128>(b) % m;
  if (r < 0) r += m;
  return static_cast<Int>(r);
}

Int pow_mod(Int base, std::uint64_t exp, Int m) {
  Int result = 1 % m;
  Int b = mod(base, m);
  while (exp) {
    if (exp & 1U) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

Int mod_inv(Int a, Int m) {
  if (m <= 0) throw ArithmeticError("modulus must be positive");
  Int old_r = mod(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw ArithmeticError(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  return mod(old_s, m);
}

std::vector<Int> factorial_inv_table(int k_max, Int m, Int p) {
  if (k_max < 0) throw PreconditionError("k_max must be non-negative");
  if (k_max >= p) {
    throw PreconditionError("prime too small for nilpotency index: need k_max=" + std::to_string(k_max) +
                            " < p=" + std::to_string(p));
  }
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  Int fact = 1 % m;
  for (int n = 0; n <= k_max; ++n) {
    if (n > 0) fact = mul_mod(fact, n, m);
    out.push_back(mod_inv(fact, m));
  }
  return out;
}

int valuation(Int a, Int p) {
  if (a == 0) throw ArithmeticError("valuation of zero");
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

Int multiplicative_order(Int a, Int p) {
  Int x = mod(a, p);
  if (x == 0) throw ArithmeticError("zero has no multiplicative order");
  Int order = 1;
  Int y = x;
  while (y != 1) {
    y = mul_mod(y, x, p);
    ++order;
  }
  return order;
}

Int primitive_root(Int p) {
  for (Int g = 2; g < p; ++g) {
    if (multiplicative_order(g, p) == p - 1) return g;
  }
  return 1;  // p = 2
}

// ---------------------------------------------------------------------------

Shape::Shape(Int p, std::vector<int> exponents) : p_(p), exponents_(std::move(exponents)) {
  if (!is_prime(p_)) throw ShapeError(std::to_string(p_) + " is not prime");
  if (p_ > kMaxPrime) {
    throw ShapeError("prime " + std::to_string(p_) + " exceeds bound " + std::to_string(kMaxPrime));
  }
  const bool supported = exponents_ == std::vector<int>{1, 1, 1, 1} || exponents_ == std::vector<int>{3, 1} ||
                         exponents_ == std::vector<int>{2, 2};
  if (!supported) throw ShapeError("unsupported exponent list; expected [1,1,1,1], [3,1] or [2,2]");

  for (int e : exponents_) {
    moduli_.push_back(ipow(p_, e));
    max_exponent_ = std::max(max_exponent_, e);
    order_ *= static_cast<std::uint64_t>(moduli_.back());
  }
  ambient_ = ipow(p_, max_exponent_);
  strides_.assign(exponents_.size(), 1);
  for (int i = rank() - 2; i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    strides_[u] = strides_[u + 1] * static_cast<std::uint64_t>(moduli_[u + 1]);
  }
}

void Shape::check_rank(const Elem& u) const {
  if (u.rank != rank()) {
    throw ShapeError("element rank " + std::to_string(u.rank) + " does not match shape rank " +
                     std::to_string(rank()));
  }
}

Elem Shape::generator(int i) const {
  if (i < 0 || i >= rank()) throw ShapeError("generator index out of range");
  Elem g = zero();
  g[i] = 1;
  return g;
}

Elem Shape::reduce(const Elem& raw) const {
  check_rank(raw);
  Elem out(rank());
  for (int i = 0; i < rank(); ++i) out[i] = mod(raw[i], modulus(i));
  return out;
}

Elem Shape::make(std::initializer_list<Int> coeffs) const { return reduce(Elem(coeffs)); }

bool Shape::is_canonical(const Elem& u) const {
  if (u.rank != rank()) return false;
  for (int i = 0; i < rank(); ++i) {
    if (u[i] < 0 || u[i] >= modulus(i)) return false;
  }
  return true;
}

Elem Shape::add(const Elem& u, const Elem& v) const {
  check_rank(u);
  check_rank(v);
  Elem out(rank());
  for (int i = 0; i < rank(); ++i) {
    Int s = u[i] + v[i];
    const Int m = modulus(i);
    out[i] = s >= m ? s - m : s;
  }
  return out;
}

Elem Shape::sub(const Elem& u, const Elem& v) const {
  check_rank(u);
  check_rank(v);
  Elem out(rank());
  for (int i = 0; i < rank(); ++i) {
    Int s = u[i] - v[i];
    out[i] = s < 0 ? s + modulus(i) : s;
  }
  return out;
}

Elem Shape::neg(const Elem& u) const { return sub(zero(), u); }

Elem Shape::scale(Int k, const Elem& u) const {
  check_rank(u);
  Elem out(rank());
  for (int i = 0; i < rank(); ++i) out[i] = mul_mod(mod(k, modulus(i)), u[i], modulus(i));
  return out;
}

std::uint64_t Shape::index(const Elem& u) const {
  check_rank(u);
  std::uint64_t idx = 0;
  for (int i = 0; i < rank(); ++i) {
    idx += static_cast<std::uint64_t>(mod(u[i], modulus(i))) * strides_[static_cast<std::size_t>(i)];
  }
  return idx;
}

Elem Shape::element(std::uint64_t index) const {
  if (index >= order_) throw ShapeError("element index out of range");
  Elem out(rank());
  for (int i = 0; i < rank(); ++i) {
    const auto s = strides_[static_cast<std::size_t>(i)];
    out[i] = static_cast<Int>(index / s);
    index %= s;
  }
  return out;
}

std::string Shape::str() const {
  std::ostringstream os;
  os << "p=" << p_ << " [";
  for (std::size_t i = 0; i < exponents_.size(); ++i) os << (i ? "," : "") << exponents_[i];
  os << ']';
  return os.str();
}

}  // namespace nilp
