#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "nilp/modarith.hpp"

namespace nilp {

/// Additive subgroup H of a shape, held in canonical echelon form.
///
/// The preimage L of H in Z^r contains every p^{e_i} x_i, so it is a full
/// lattice with a unique Hermite normal form: row c has zeros left of column
/// c, pivot p^{v_c} at column c (v_c <= e_c), and the entry in every later
/// column j reduced into [0, p^{v_j}). Two subgroups are equal iff their
/// forms are equal, |H| = prod p^{e_c - v_c}, and membership is a forward
/// substitution.
class Subgroup {
 public:
  /// The subgroup generated by gens.
  static Subgroup span(const Shape& shape, std::span<const Elem> gens);
  static Subgroup trivial(const Shape& shape);
  static Subgroup whole(const Shape& shape);

  const Shape& shape() const { return shape_; }

  std::uint64_t order() const;
  /// log_p |H|.
  int log_order() const;
  bool is_trivial() const { return log_order() == 0; }

  bool contains(const Elem& u) const;
  bool contains(const Subgroup& other) const;

  /// Echelon rows that are nonzero in the group; they generate H.
  std::vector<Elem> generators() const;

  /// Every element of H exactly once.
  void for_each_element(const std::function<void(const Elem&)>& fn) const;
  std::vector<Elem> elements() const;

  /// The pivot valuations v_c.
  const std::vector<int>& pivots() const { return pivots_; }
  const std::vector<Elem>& rows() const { return rows_; }

  /// H + K.
  Subgroup operator+(const Subgroup& other) const;
  /// p^k H.
  Subgroup scaled(Int k) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.shape_ == b.shape_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  Subgroup(Shape shape, std::vector<Elem> rows, std::vector<int> pivots)
      : shape_(std::move(shape)), rows_(std::move(rows)), pivots_(std::move(pivots)) {}

  Shape shape_;
  std::vector<Elem> rows_;  // one per column; row c has pivot p^{pivots_[c]}
  std::vector<int> pivots_;
};

}  // namespace nilp
