#pragma once

#include <vector>

#include <json.hpp>

#include "ccsim/rational.hpp"

namespace ccsim {

// Lower bound on the load under uncoded placement, as a linear program over
// x_i = total length of subfiles known by exactly i users:
//   minimize sum c_i x_i  s.t.  sum x_i = N,  sum i*x_i = KM,  x >= 0.
Rational bound_objective_coefficient(int n, int k, int i);

struct BoundCertificatePoint {
  Rational m;
  Rational bound;
  std::vector<Rational> witness;  // x_0 .. x_K, at most two nonzero
  int active_segment = 0;         // q of the binding closed-form segment (N=2)
};

// Exact LP minimum by enumerating all basic feasible solutions (variable
// pairs). Throws InfeasibleError when M is outside [0, N].
BoundCertificatePoint lp_bound(int n, int k, const Rational& m);

// Piecewise-linear closed form for N=2: max over q in [1:K] of
// (2K^2-2K-q^2+q)/(K(K-1)) + (2q-3K+1)/(2(K-1)) * M.
Rational closed_form_bound_n2(int k, const Rational& m);

struct CertificationPoint {
  Rational m;
  Rational achievable;  // envelope of the two-step corner points
  Rational bound;
  std::vector<Rational> witness;
};

struct CertificationReport {
  int n = 2;
  int k = 0;
  bool certified = false;
  std::vector<CertificationPoint> points;
};

// Exact-rational check that for N=2 the envelope of the two-step corner
// points, the LP bound, and the closed form coincide at every corner
// M = 2t/K and at 50 intermediate points. Throws CertificationFailedError
// with the first counterexample.
CertificationReport certify_optimality_n2(int k);

// Bound-only report for general N (no equality claim).
CertificationReport bound_report(int n, int k, const std::vector<Rational>& grid);

nlohmann::json certificate_json(const CertificationReport& report);

}  // namespace ccsim
