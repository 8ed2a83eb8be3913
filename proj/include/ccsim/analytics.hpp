#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccsim/combinatorics.hpp"
#include "ccsim/rational.hpp"

namespace ccsim {

// Memory threshold below which the two-step delivery beats the plain XOR
// delivery at the same combinatorial placement.
struct Threshold {
  BigInt discriminant;                // (NK-2N+1)^2 - 4(N-1)(K-N)(K-1)
  std::optional<Rational> m_th_exact; // present when the discriminant is square
  double m_th = 0;
  double t_th = 0;                    // K * m_th / N
};

// Throws NegativeDiscriminantError when the discriminant is negative;
// callers then fall back to pointwise scheme comparison.
Threshold m_threshold(int n, int k);

// Load of the two-step scheme at cache level t = KM/N (any rational M).
Rational r_co(int n, int k, const Rational& m);

// Baseline XOR-delivery load at the corner M = tN/K, capped by sending
// every demanded file once.
Rational mns_corner(int n, int k, int t);

// Envelope of the two-step corner points only.
PiecewiseLinear rco_curve(int n, int k);

// Composite achievable curve: the (1/K, N(1-1/K)) memory-sharing point,
// then per corner the better of two-step and baseline delivery.
PiecewiseLinear centralized_curve(int n, int k);

// Baseline envelope including the same (1/K, N(1-1/K)) point.
PiecewiseLinear mns_centralized(int n, int k);

// Decentralized baseline load, exact formula in double precision.
double mns_decentralized(int n, int k, double m);

// Decentralized two-step load: per-level sum, cross-checked internally
// against the closed form to 1e-9.
double r_d(int n, int k, double m);

// The two forms separately (exposed for tests).
double r_d_sum(int n, int k, double m);
double r_d_closed(int n, int k, double m);

// ---- CSV emission ---------------------------------------------------------

struct CsvRow {
  std::string scheme;
  Rational m;
  double load = 0;
  bool exact = false;
};

// Header scheme,M_num,M_den,load,exact; rows sorted by scheme then M;
// load printed with 12 decimal digits.
std::string curves_csv(std::vector<CsvRow> rows);

std::vector<CsvRow> curve_rows(const std::string& scheme,
                               const PiecewiseLinear& curve,
                               const std::vector<Rational>& grid, bool exact);

}  // namespace ccsim
