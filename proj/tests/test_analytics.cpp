#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ccsim/analytics.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/rng.hpp"

using namespace ccsim;

TEST_CASE("two-step load closed form") {
  CHECK(r_co(2, 5, Rational(4, 5)) == Rational(9, 10));
  CHECK(r_co(2, 10, Rational(1)) == Rational(13, 18));
  CHECK(std::abs(to_double(r_co(2, 10, Rational(1))) - 0.722) < 1e-3);
  for (int n = 2; n <= 5; ++n)
    for (int k = n + 1; k <= 10; ++k) {
      CHECK(r_co(n, k, Rational(0)) == n);
      CHECK(r_co(n, k, Rational(n)) == 0);
      // Never worse than sending the uncached remainder of every file.
      for (int t = 0; t <= k; ++t) {
        const Rational m(BigInt(t) * n, k);
        CHECK(r_co(n, k, m) <= Rational(n) - m);
      }
    }
}

TEST_CASE("memory threshold values") {
  const auto th25 = m_threshold(2, 5);
  CHECK(th25.discriminant == 1);
  REQUIRE(th25.m_th_exact);
  CHECK(*th25.m_th_exact == Rational(6, 5));

  const auto th48 = m_threshold(4, 8);
  CHECK(th48.discriminant == 289);
  REQUIRE(th48.m_th_exact);
  CHECK(*th48.m_th_exact == Rational(2, 3));
  CHECK(th48.t_th == doctest::Approx(4.0 / 3).epsilon(1e-12));

  // For two files the discriminant is always 1.
  for (int k = 3; k <= 20; ++k) CHECK(m_threshold(2, k).discriminant == 1);
}

TEST_CASE("threshold separates the two delivery schemes on the grid") {
  for (auto [n, k] : {std::pair{2, 5}, {2, 10}, {3, 7}, {4, 8}}) {
    const auto th = m_threshold(n, k);
    for (int t = 0; t <= k; ++t) {
      const Rational m(BigInt(t) * n, k);
      const Rational rco = r_co(n, k, m);
      // Uncapped XOR-delivery load; the threshold is derived against it.
      const Rational mns(k - t, t + 1);
      if (to_double(m) < th.m_th - 1e-12)
        CHECK(rco < mns);
      else
        CHECK(rco >= mns);
    }
  }
}

TEST_CASE("centralized envelopes and figure corners") {
  const auto proposed = centralized_curve(2, 10);
  const auto baseline = mns_centralized(2, 10);
  CHECK(std::abs(to_double(proposed.eval(Rational(1))) - 0.722) < 1e-3);
  CHECK(std::abs(to_double(baseline.eval(Rational(1))) - 0.794) < 1e-3);
  CHECK(proposed.eval(Rational(1)) == Rational(13, 18));
  CHECK(baseline.eval(Rational(1)) == Rational(306, 385));
  // Memory-sharing point with the small-cache scheme.
  CHECK(proposed.eval(Rational(1, 10)) == Rational(9, 5));
  CHECK(proposed.eval(Rational(2)) == 0);
  CHECK(baseline.eval(Rational(0)) == 2);
}

TEST_CASE("envelope convexity, monotonicity and dominance") {
  for (auto [n, k] : {std::pair{2, 10}, {4, 8}, {3, 7}}) {
    const auto proposed = centralized_curve(n, k);
    const auto baseline = mns_centralized(n, k);
    const auto& v = proposed.vertices();
    for (size_t i = 1; i < v.size(); ++i) {
      CHECK(v[i].first > v[i - 1].first);
      CHECK(v[i].second <= v[i - 1].second);  // non-increasing
    }
    for (size_t i = 2; i < v.size(); ++i) {
      // Slopes non-decreasing: convex.
      const Rational s1 = (v[i - 1].second - v[i - 2].second) /
                          (v[i - 1].first - v[i - 2].first);
      const Rational s2 =
          (v[i].second - v[i - 1].second) / (v[i].first - v[i - 1].first);
      CHECK(s1 <= s2);
    }
    for (int g = 0; g <= 100; ++g) {
      const Rational m(BigInt(g) * n, 100);
      CHECK(proposed.eval(m) <= baseline.eval(m));
    }
  }
}

TEST_CASE("decentralized load formula") {
  CHECK(std::abs(r_d(4, 8, 1.2) - 1.894) < 1e-3);
  CHECK(r_d(4, 8, 0) == 4);
  CHECK(r_d(4, 8, 4) == 0);
  CHECK(r_d(2, 5, 0) == 2);
  CHECK(r_d(2, 5, 2) == 0);
}

TEST_CASE("per-level sum agrees with the closed form at random points") {
  Rng rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 3 + static_cast<int>(rng.below(10));
    const int n = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(k) - 2));
    const double m = n * (static_cast<double>(rng.below(1000) + 1) / 1001.0);
    const double sum = r_d_sum(n, k, m);
    const double closed = r_d_closed(n, k, m);
    CHECK(std::abs(sum - closed) < 1e-9);
  }
}

TEST_CASE("decentralized load is non-increasing in memory") {
  for (auto [n, k] : {std::pair{2, 5}, {4, 8}, {3, 9}}) {
    double prev = r_d(n, k, 0);
    for (int g = 1; g <= 200; ++g) {
      const double m = n * g / 200.0;
      const double cur = r_d(n, k, m);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("decentralized baseline endpoints and documented value") {
  CHECK(mns_decentralized(4, 8, 0) == 4);
  CHECK(mns_decentralized(4, 8, 4) == 0);
  // Our formula gives about 2.199 at the figure's operating point; the
  // figure itself quotes 2.102 without a derivation, so we pin our value.
  CHECK(std::abs(mns_decentralized(4, 8, 1.2) - 2.199) < 2e-3);
  CHECK(r_d(4, 8, 1.2) < mns_decentralized(4, 8, 1.2));
}

TEST_CASE("csv emission is sorted and stable") {
  std::vector<CsvRow> rows{{"b", Rational(1), 0.5, true},
                           {"a", Rational(2), 1.25, false},
                           {"a", Rational(1, 2), 2.0, true}};
  const std::string csv = curves_csv(rows);
  const std::string expect =
      "scheme,M_num,M_den,load,exact\n"
      "a,1,2,2.000000000000,1\n"
      "a,2,1,1.250000000000,0\n"
      "b,1,1,0.500000000000,1\n";
  CHECK(csv == expect);
}
