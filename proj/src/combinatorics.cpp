#include "ccsim/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

#include "ccsim/errors.hpp"

namespace ccsim {

BigInt binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

uint64_t binom_u64(long long n, long long k) {
  return binom(n, k).convert_to<uint64_t>();
}

uint64_t subset_rank_colex(std::span<const int> sorted_members) {
  uint64_t r = 0;
  for (size_t i = 0; i < sorted_members.size(); ++i)
    r += binom_u64(sorted_members[i], static_cast<long long>(i) + 1);
  return r;
}

std::vector<int> subset_unrank_colex(int t, uint64_t rank) {
  std::vector<int> out(t);
  for (int i = t; i >= 1; --i) {
    int a = i - 1;
    while (binom_u64(a + 1, i) <= rank) ++a;
    out[i - 1] = a;
    rank -= binom_u64(a, i);
  }
  return out;
}

uint64_t mask_rank_colex(uint32_t mask) {
  uint64_t r = 0;
  int i = 0;
  while (mask) {
    const int bit = std::countr_zero(mask);
    r += binom_u64(bit, ++i);
    mask &= mask - 1;
  }
  return r;
}

uint32_t mask_unrank_colex(int t, uint64_t rank) {
  uint32_t mask = 0;
  for (int member : subset_unrank_colex(t, rank)) mask |= 1u << member;
  return mask;
}

std::vector<uint32_t> masks_of_size(int k, int t) {
  std::vector<uint32_t> out;
  out.reserve(binom_u64(k, t));
  if (t == 0) {
    out.push_back(0);
    return out;
  }
  if (t > k) return out;
  uint32_t v = (1u << t) - 1;
  const uint32_t limit = 1u << k;
  while (v < limit) {
    out.push_back(v);
    const uint32_t t0 = v | (v - 1);  // Gosper's hack
    v = (t0 + 1) | (((~t0 & (t0 + 1)) - 1) >> (std::countr_zero(v) + 1));
    if (v == 0) break;
  }
  return out;
}

bool pascal_check(long long g, long long t, long long j) {
  return binom(g, t - j) - binom(g - 1, t - j - 1) == binom(g - 1, t - j);
}

BigInt vandermonde_total(long long g_size, long long k, long long t) {
  const long long lo = std::max(0ll, t - g_size + 1);
  BigInt sum = 0;
  for (long long j = lo; j <= t; ++j)
    sum += binom(g_size - 1, t - j) * binom(k - g_size, j);
  assert(sum == binom(k - 1, t));
  return sum;
}

BigInt vandermonde_known(long long g_size, long long k, long long t) {
  const long long lo = std::max(1ll, t - g_size + 1);
  BigInt sum = 0;
  for (long long j = lo; j <= t; ++j)
    sum += binom(g_size - 1, t - j) * binom(k - g_size - 1, j - 1);
  assert(sum == binom(k - 2, t - 1));
  return sum;
}

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<Rational, Rational>> vertices)
    : v_(std::move(vertices)) {
  if (v_.empty()) throw EmptyInputError("piecewise-linear function needs vertices");
}

Rational PiecewiseLinear::eval(const Rational& x) const {
  if (x <= v_.front().first) return v_.front().second;
  if (x >= v_.back().first) return v_.back().second;
  size_t lo = 0, hi = v_.size() - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    (v_[mid].first <= x ? lo : hi) = mid;
  }
  const auto& [x0, y0] = v_[lo];
  const auto& [x1, y1] = v_[hi];
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

PiecewiseLinear lower_convex_envelope(std::vector<std::pair<Rational, Rational>> points) {
  if (points.empty()) throw EmptyInputError("no points for envelope");
  std::sort(points.begin(), points.end());
  // Dedup abscissae, keeping the lowest ordinate.
  std::vector<std::pair<Rational, Rational>> pts;
  for (auto& p : points) {
    if (!pts.empty() && pts.back().first == p.first) {
      if (p.second < pts.back().second) pts.back().second = p.second;
    } else {
      pts.push_back(std::move(p));
    }
  }
  // Monotone-chain lower hull with exact cross products; collinear points
  // are dropped so every hull vertex is a corner.
  std::vector<std::pair<Rational, Rational>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      const Rational cross = (b.first - a.first) * (p.second - a.second) -
                             (b.second - a.second) * (p.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }
  return PiecewiseLinear(std::move(hull));
}

}  // namespace ccsim
