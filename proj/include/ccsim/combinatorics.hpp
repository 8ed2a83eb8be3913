#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ccsim/rational.hpp"

namespace ccsim {

// C(n,k); 0 when k < 0, k > n or n < 0 (the out-of-range convention used by
// all the counting identities below).
BigInt binom(long long n, long long k);
uint64_t binom_u64(long long n, long long k);

// ---- colexicographic subset ranking --------------------------------------
//
// Subsets of [0:K) with fixed size t, identified by their colex rank in
// [0, C(K,t)). Enumerating t-bit masks in increasing numeric order visits
// exactly this order, so subfile identifiers are stable across the repo.

uint64_t subset_rank_colex(std::span<const int> sorted_members);
std::vector<int> subset_unrank_colex(int t, uint64_t rank);

uint64_t mask_rank_colex(uint32_t mask);
uint32_t mask_unrank_colex(int t, uint64_t rank);

// All size-t masks over [0:K) in colex (numeric) order.
std::vector<uint32_t> masks_of_size(int k, int t);

// ---- counting identities -------------------------------------------------

// C(g, t-j) - C(g-1, t-j-1) == C(g-1, t-j)   (Pascal step used by the
// per-group coded row count).
bool pascal_check(long long g, long long t, long long j);

// Total subfile-units coded for one demand group: the sum over admissible
// leftover sizes j of C(g-1, t-j) * C(k-g, j). Checked against C(k-1, t).
BigInt vandermonde_total(long long g_size, long long k, long long t);

// Same sum restricted to leftover sets containing one fixed outside user.
// Checked against C(k-2, t-1).
BigInt vandermonde_known(long long g_size, long long k, long long t);

// ---- lower convex envelope -----------------------------------------------

// Piecewise-linear function given by its breakpoints (sorted by abscissa).
class PiecewiseLinear {
 public:
  explicit PiecewiseLinear(std::vector<std::pair<Rational, Rational>> vertices);

  // Exact value at x; clamps to the end segments' endpoints outside range.
  Rational eval(const Rational& x) const;

  const std::vector<std::pair<Rational, Rational>>& vertices() const { return v_; }

 private:
  std::vector<std::pair<Rational, Rational>> v_;
};

// Lower boundary of the convex hull of the given points; exact rational
// cross-product tests, no floating point. Throws EmptyInputError.
PiecewiseLinear lower_convex_envelope(std::vector<std::pair<Rational, Rational>> points);

}  // namespace ccsim
