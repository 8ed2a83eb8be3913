#include "ccsim/bounds.hpp"

#include <json.hpp>

#include "ccsim/analytics.hpp"
#include "ccsim/combinatorics.hpp"
#include "ccsim/errors.hpp"

namespace ccsim {

Rational bound_objective_coefficient(int n, int k, int i) {
  BigInt numer = 0;
  for (int j = 1; j <= n; ++j) numer += binom(k - j, i);
  return Rational(numer, BigInt(n) * binom(k, i));
}

BoundCertificatePoint lp_bound(int n, int k, const Rational& m) {
  if (m < 0 || m > n) throw InfeasibleError("M outside [0, N]");
  std::vector<Rational> c(k + 1);
  for (int i = 0; i <= k; ++i) c[i] = bound_objective_coefficient(n, k, i);
  const Rational km = m * k;

  BoundCertificatePoint best;
  bool found = false;
  for (int i = 0; i <= k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      // x_i + x_j = N, i*x_i + j*x_j = KM, the rest zero.
      const Rational xj = (km - Rational(i) * n) / (j - i);
      const Rational xi = Rational(n) - xj;
      if (xi < 0 || xj < 0) continue;
      const Rational value = c[i] * xi + c[j] * xj;
      if (!found || value < best.bound) {
        found = true;
        best.m = m;
        best.bound = value;
        best.witness.assign(k + 1, Rational(0));
        best.witness[i] = xi;
        best.witness[j] = xj;
      }
    }
  }
  if (!found) throw InfeasibleError("no basic feasible solution");
  if (n == 2) {
    Rational seg_best;
    for (int q = 1; q <= k; ++q) {
      const Rational v =
          Rational(BigInt(2) * k * k - 2 * k - BigInt(q) * q + q,
                   BigInt(k) * (k - 1)) +
          Rational(2 * q - 3 * k + 1, 2 * (k - 1)) * m;
      if (q == 1 || v > seg_best) {
        seg_best = v;
        best.active_segment = q;
      }
    }
  }
  return best;
}

Rational closed_form_bound_n2(int k, const Rational& m) {
  Rational best;
  for (int q = 1; q <= k; ++q) {
    const Rational v = Rational(BigInt(2) * k * k - 2 * k - BigInt(q) * q + q,
                                BigInt(k) * (k - 1)) +
                       Rational(2 * q - 3 * k + 1, 2 * (k - 1)) * m;
    if (q == 1 || v > best) best = v;
  }
  return best;
}

namespace {

CertificationPoint check_point(int k, const PiecewiseLinear& envelope,
                               const Rational& m) {
  CertificationPoint pt;
  pt.m = m;
  pt.achievable = envelope.eval(m);
  BoundCertificatePoint lp = lp_bound(2, k, m);
  pt.bound = lp.bound;
  pt.witness = std::move(lp.witness);
  const Rational closed = closed_form_bound_n2(k, m);
  if (pt.bound != closed || pt.achievable != pt.bound)
    throw CertificationFailedError(
        "mismatch at M = " + rational_string(m) + ": achievable " +
        rational_string(pt.achievable) + ", lp " + rational_string(pt.bound) +
        ", closed form " + rational_string(closed));
  return pt;
}

}  // namespace

CertificationReport certify_optimality_n2(int k) {
  if (k <= 2) throw InvalidRegimeError("certification needs K > 2");
  const PiecewiseLinear envelope = rco_curve(2, k);
  CertificationReport report;
  report.n = 2;
  report.k = k;
  for (int t = 0; t <= k; ++t)
    report.points.push_back(check_point(k, envelope, Rational(2 * t, k)));
  for (int j = 1; j <= 50; ++j)
    report.points.push_back(check_point(k, envelope, Rational(2 * j, 51)));
  report.certified = true;
  return report;
}

CertificationReport bound_report(int n, int k, const std::vector<Rational>& grid) {
  CertificationReport report;
  report.n = n;
  report.k = k;
  const PiecewiseLinear envelope = rco_curve(n, k);
  for (const Rational& m : grid) {
    CertificationPoint pt;
    pt.m = m;
    pt.achievable = envelope.eval(m);
    BoundCertificatePoint lp = lp_bound(n, k, m);
    pt.bound = lp.bound;
    pt.witness = std::move(lp.witness);
    report.points.push_back(std::move(pt));
  }
  report.certified = false;  // no equality claim outside N = 2
  return report;
}

nlohmann::json certificate_json(const CertificationReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const CertificationPoint& pt : report.points) {
    nlohmann::json witness = nlohmann::json::array();
    for (const Rational& x : pt.witness) witness.push_back(rational_string(x));
    points.push_back({{"M", rational_string(pt.m)},
                      {"achievable", rational_string(pt.achievable)},
                      {"bound", rational_string(pt.bound)},
                      {"witness", witness}});
  }
  return {{"N", report.n},
          {"K", report.k},
          {"certified", report.certified},
          {"points", points}};
}

}  // namespace ccsim
