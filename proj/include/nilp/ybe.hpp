#pragma once

// Set-theoretic solutions of the Yang-Baxter equation from braces:
//
//     lambda_a(b) = a * b + b,     r(a, b) = (lambda_a(b), lambda^{-1}_{lambda_a(b)}(a)).

#include <cstdint>
#include <utility>
#include <vector>

#include "nilp/brace.hpp"
#include "nilp/report.hpp"

namespace nilp {

/// Carriers up to this order get full lambda and lambda^{-1} tables
/// (p <= 7 for every supported shape).
inline constexpr std::uint64_t kSolutionTableLimit = 4096;

Elem lambda_map(const Brace& b, const Elem& a, const Elem& x);

class Solution {
 public:
  explicit Solution(const Brace& b, int threads = 0);

  const Shape& shape() const { return brace_.shape(); }
  const Brace& brace() const { return brace_; }
  bool tabulated() const { return !lam_.empty(); }

  Elem lambda(const Elem& a, const Elem& x) const;
  /// lambda_a^{-1}(y). PreconditionError if lambda_a is not a bijection.
  Elem lambda_inverse(const Elem& a, const Elem& y) const;
  std::pair<Elem, Elem> r(const Elem& a, const Elem& b) const;

  /// Indices a whose lambda_a is not a bijection (tabulated carriers only).
  const std::vector<std::uint32_t>& degenerate() const { return degenerate_; }

  /// Tabulated index form of lambda, lambda^{-1} and r.
  std::uint32_t lambda_index(std::uint32_t a, std::uint32_t x) const { return lam_[a * n_ + x]; }
  std::uint32_t lambda_inverse_index(std::uint32_t a, std::uint32_t y) const { return inv_[a * n_ + y]; }
  std::pair<std::uint32_t, std::uint32_t> r_index(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t u = lam_[a * n_ + b];
    return {u, inv_[u * n_ + a]};
  }

 private:
  Elem inverse_of(const Elem& a) const;

  Brace brace_;
  std::uint64_t n_ = 0;
  std::vector<std::uint32_t> lam_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> degenerate_;
};

struct YbeOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
};

/// Non-degeneracy (every lambda_a and every a -> second coordinate of r(a, b)
/// bijective), lambda_a(0) = 0, r^2 = id, the left-action property
/// lambda_{a o b} = lambda_a lambda_b, and the braid relation
/// (r x id)(id x r)(r x id) = (id x r)(r x id)(id x r). Bijectivity and
/// involutivity are exhaustive on tabulated carriers and sampled otherwise;
/// the braid relation is always sampled.
Report certify_solution(const Brace& b, const YbeOptions& opts = {});

/// {"schema":1,"operation":"yang-baxter",...,"first":[[...]],"second":[[...]]}
/// where r(a, b) = (first[a][b], second[a][b]) on element indices.
/// PreconditionError unless the solution is tabulated.
Json export_solution(const Solution& sol);

}  // namespace nilp
