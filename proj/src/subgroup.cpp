#include "nilp/subgroup.hpp"

#include <algorithm>

#include "nilp/errors.hpp"

namespace nilp {
namespace {

// row -= t * pivot on columns >= from, reducing each column modulo its
// generator order (legal because p^{e_j} x_j lies in every preimage lattice).
void subtract_multiple(const Shape& s, Elem& row, Int t, const Elem& pivot, int from) {
  for (int j = from; j < s.rank(); ++j) {
    row[j] = mod(row[j] - mul_mod(t, pivot[j], s.modulus(j)), s.modulus(j));
  }
}

}  // namespace

Subgroup Subgroup::span(const Shape& shape, std::span<const Elem> gens) {
  const int r = shape.rank();
  const Int p = shape.p();
  std::vector<Elem> active;
  active.reserve(gens.size() + static_cast<std::size_t>(r));
  for (const auto& g : gens) {
    Elem row = shape.reduce(g);
    if (!row.is_zero()) active.push_back(row);
  }

  std::vector<Elem> rows(static_cast<std::size_t>(r), Elem(r));
  std::vector<int> pivots(static_cast<std::size_t>(r), 0);

  for (int c = 0; c < r; ++c) {
    const int e = shape.exponent(c);
    std::size_t best = active.size();
    int best_v = e;
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (active[k][c] == 0) continue;
      const int v = valuation(active[k][c], p);
      if (v < best_v) {
        best_v = v;
        best = k;
      }
    }

    Elem pivot(r);
    if (best == active.size()) {
      pivot[c] = shape.modulus(c);  // p^{e_c} x_c, zero in the group
      pivots[static_cast<std::size_t>(c)] = e;
    } else {
      pivot = active[best];
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(best));
      const Int pv = ipow(p, best_v);
      const Int unit_inv = mod_inv(pivot[c] / pv, shape.ambient_modulus());
      for (int j = c; j < r; ++j) pivot[j] = mul_mod(unit_inv, pivot[j], shape.modulus(j));
      pivot[c] = pv;

      for (auto& row : active) {
        if (row[c] == 0) continue;
        const Int t = row[c] / pv;
        subtract_multiple(shape, row, t, pivot, c);
        if (row[c] != 0) throw InvariantError("echelon elimination left a nonzero pivot column");
      }
      // p^{e_c - v} * pivot has column c equal to p^{e_c}, which is absorbed
      // by p^{e_c} x_c; the tail must stay in the lattice.
      Elem tail(r);
      const Int mult = ipow(p, e - best_v);
      for (int j = c + 1; j < r; ++j) tail[j] = mul_mod(mult, pivot[j], shape.modulus(j));
      if (!tail.is_zero()) active.push_back(tail);
      pivots[static_cast<std::size_t>(c)] = best_v;
    }
    rows[static_cast<std::size_t>(c)] = pivot;
    std::erase_if(active, [](const Elem& row) { return row.is_zero(); });
  }

  // Reduce each column above its pivot into [0, p^{v_c}).
  for (int c = 1; c < r; ++c) {
    const Int pv = ipow(p, pivots[static_cast<std::size_t>(c)]);
    for (int above = 0; above < c; ++above) {
      Elem& row = rows[static_cast<std::size_t>(above)];
      const Int t = row[c] / pv;
      if (t != 0) subtract_multiple(shape, row, t, rows[static_cast<std::size_t>(c)], c);
    }
  }
  return Subgroup(shape, std::move(rows), std::move(pivots));
}

Subgroup Subgroup::trivial(const Shape& shape) { return span(shape, {}); }

Subgroup Subgroup::whole(const Shape& shape) {
  std::vector<Elem> gens;
  for (int i = 0; i < shape.rank(); ++i) gens.push_back(shape.generator(i));
  return span(shape, gens);
}

int Subgroup::log_order() const {
  int total = 0;
  for (int c = 0; c < shape_.rank(); ++c) total += shape_.exponent(c) - pivots_[static_cast<std::size_t>(c)];
  return total;
}

std::uint64_t Subgroup::order() const {
  return static_cast<std::uint64_t>(ipow(shape_.p(), log_order()));
}

bool Subgroup::contains(const Elem& u) const {
  Elem x = shape_.reduce(u);
  for (int c = 0; c < shape_.rank(); ++c) {
    const Int pv = ipow(shape_.p(), pivots_[static_cast<std::size_t>(c)]);
    if (x[c] % pv != 0) return false;
    const Int t = x[c] / pv;
    if (t != 0) subtract_multiple(shape_, x, t, rows_[static_cast<std::size_t>(c)], c);
  }
  return x.is_zero();
}

bool Subgroup::contains(const Subgroup& other) const {
  const auto gens = other.generators();
  return std::all_of(gens.begin(), gens.end(), [this](const Elem& g) { return contains(g); });
}

std::vector<Elem> Subgroup::generators() const {
  std::vector<Elem> out;
  for (int c = 0; c < shape_.rank(); ++c) {
    if (pivots_[static_cast<std::size_t>(c)] < shape_.exponent(c)) {
      out.push_back(shape_.reduce(rows_[static_cast<std::size_t>(c)]));
    }
  }
  return out;
}

void Subgroup::for_each_element(const std::function<void(const Elem&)>& fn) const {
  // Sum_c t_c * row_c with 0 <= t_c < p^{e_c - v_c} enumerates H bijectively.
  std::vector<Elem> gens;
  std::vector<Int> bounds;
  for (int c = 0; c < shape_.rank(); ++c) {
    const int span_exp = shape_.exponent(c) - pivots_[static_cast<std::size_t>(c)];
    if (span_exp == 0) continue;
    gens.push_back(shape_.reduce(rows_[static_cast<std::size_t>(c)]));
    bounds.push_back(ipow(shape_.p(), span_exp));
  }
  std::vector<Int> counter(gens.size(), 0);
  Elem current = shape_.zero();
  while (true) {
    fn(current);
    std::size_t k = 0;
    for (; k < gens.size(); ++k) {
      current = shape_.add(current, gens[k]);
      if (++counter[k] < bounds[k]) break;
      counter[k] = 0;  // reset digit k; bounds[k] * gens[k] need not be zero
      current = shape_.sub(current, shape_.scale(bounds[k], gens[k]));
    }
    if (k == gens.size()) break;
  }
}

std::vector<Elem> Subgroup::elements() const {
  std::vector<Elem> out;
  out.reserve(order());
  for_each_element([&](const Elem& u) { out.push_back(u); });
  return out;
}

Subgroup Subgroup::operator+(const Subgroup& other) const {
  if (!(shape_ == other.shape_)) throw ShapeError("subgroups of different shapes");
  auto gens = generators();
  const auto more = other.generators();
  gens.insert(gens.end(), more.begin(), more.end());
  return span(shape_, gens);
}

Subgroup Subgroup::scaled(Int k) const {
  auto gens = generators();
  for (auto& g : gens) g = shape_.scale(k, g);
  return span(shape_, gens);
}

}  // namespace nilp
