#include "ccsim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ccsim/errors.hpp"

namespace ccsim {

Threshold m_threshold(int n, int k) {
  if (n < 2 || k <= n) throw InvalidRegimeError("threshold needs 2 <= N < K");
  const BigInt a = BigInt(n) * k - 2 * n + 1;
  const BigInt disc = a * a - BigInt(4) * (n - 1) * (k - n) * (k - 1);
  if (disc < 0)
    throw NegativeDiscriminantError("threshold discriminant negative");
  Threshold th;
  th.discriminant = disc;
  const BigInt root = boost::multiprecision::sqrt(disc);
  if (root * root == disc) {
    th.m_th_exact = Rational(BigInt(n) * (a - root), BigInt(2) * k * (n - 1));
    th.m_th = to_double(*th.m_th_exact);
  } else {
    th.m_th = static_cast<double>(n) *
              (a.convert_to<double>() - std::sqrt(disc.convert_to<double>())) /
              (2.0 * k * (n - 1));
  }
  th.t_th = th.m_th * k / n;
  return th;
}

Rational r_co(int n, int k, const Rational& m) {
  return Rational(n) - m -
         m * (n - 1) * k * (Rational(n) - m) / (Rational(n) * n * (k - 1));
}

Rational mns_corner(int n, int k, int t) {
  return std::min(Rational(k - t, t + 1), Rational(BigInt(n) * (k - t), k));
}

PiecewiseLinear rco_curve(int n, int k) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (int t = 0; t <= k; ++t) {
    const Rational m(BigInt(t) * n, k);
    pts.emplace_back(m, r_co(n, k, m));
  }
  return lower_convex_envelope(std::move(pts));
}

PiecewiseLinear centralized_curve(int n, int k) {
  std::vector<std::pair<Rational, Rational>> pts;
  pts.emplace_back(Rational(1, k), Rational(BigInt(n) * (k - 1), k));
  for (int t = 0; t <= k; ++t) {
    const Rational m(BigInt(t) * n, k);
    pts.emplace_back(m, std::min(r_co(n, k, m), mns_corner(n, k, t)));
  }
  return lower_convex_envelope(std::move(pts));
}

PiecewiseLinear mns_centralized(int n, int k) {
  std::vector<std::pair<Rational, Rational>> pts;
  pts.emplace_back(Rational(1, k), Rational(BigInt(n) * (k - 1), k));
  for (int t = 0; t <= k; ++t)
    pts.emplace_back(Rational(BigInt(t) * n, k), mns_corner(n, k, t));
  return lower_convex_envelope(std::move(pts));
}

double mns_decentralized(int n, int k, double m) {
  if (m <= 0) return n;
  if (m >= n) return 0;
  const double q = m / n;
  const double gain = n / (k * m) * (1.0 - std::pow(1.0 - q, k));
  return k * (1.0 - q) * std::min(gain, static_cast<double>(n) / k);
}

namespace {

double level_weight(int k, int i, double q) {
  return std::pow(q, i) * std::pow(1.0 - q, k - i);
}

double two_step_coeff(int n, int k, int i) {
  return (BigInt(n) * binom(k - 1, i) - BigInt(n - 1) * binom(k - 2, i - 1))
      .convert_to<double>();
}

double mns_coeff(int k, int i) { return binom(k, i + 1).convert_to<double>(); }

std::optional<long> threshold_floor(int n, int k) {
  try {
    return static_cast<long>(std::floor(m_threshold(n, k).t_th));
  } catch (const Error&) {
    return std::nullopt;  // pointwise comparison fallback
  }
}

}  // namespace

double r_d_sum(int n, int k, double m) {
  const double q = m / n;
  if (q <= 0) return n;
  if (q >= 1) return 0;
  const std::optional<long> lt = threshold_floor(n, k);
  double total = 0;
  for (int i = 0; i < k; ++i) {
    const double two = two_step_coeff(n, k, i);
    const double mns = mns_coeff(k, i);
    const double coeff = lt ? (i <= *lt ? two : mns) : std::min(two, mns);
    total += coeff * level_weight(k, i, q);
  }
  return total;
}

double r_d_closed(int n, int k, double m) {
  const double q = m / n;
  if (q <= 0) return n;
  if (q >= 1) return 0;
  const std::optional<long> lt = threshold_floor(n, k);
  if (!lt) return r_d_sum(n, k, m);
  const auto cdf = [q](long x, int y) {
    double s = 0;
    for (long l = 0; l <= x; ++l)
      s += binom(y, l).convert_to<double>() * std::pow(q, l) *
           std::pow(1.0 - q, y - l);
    return s;
  };
  return n * (1 - q) * cdf(*lt, k - 1) -
         (n - 1) * q * (1 - q) * cdf(*lt - 1, k - 2) +
         (1 - q) / q * (1.0 - cdf(*lt + 1, k));
}

double r_d(int n, int k, double m) {
  const double sum = r_d_sum(n, k, m);
  const double closed = r_d_closed(n, k, m);
  if (std::abs(sum - closed) > 1e-9)
    throw Error("per-level sum and closed form disagree: " +
                std::to_string(sum) + " vs " + std::to_string(closed));
  return sum;
}

std::vector<CsvRow> curve_rows(const std::string& scheme,
                               const PiecewiseLinear& curve,
                               const std::vector<Rational>& grid, bool exact) {
  std::vector<CsvRow> rows;
  for (const Rational& m : grid)
    rows.push_back({scheme, m, to_double(curve.eval(m)), exact});
  return rows;
}

std::string curves_csv(std::vector<CsvRow> rows) {
  std::sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    return a.m < b.m;
  });
  std::string out = "scheme,M_num,M_den,load,exact\n";
  char buf[64];
  for (const CsvRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12f", r.load);
    out += r.scheme + "," + num(r.m).str() + "," + den(r.m).str() + "," + buf +
           "," + (r.exact ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace ccsim
