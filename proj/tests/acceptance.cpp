// Acceptance gate: one line per criterion, exit 1 if any fails.
#include <bit>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ccsim/analytics.hpp"
#include "ccsim/bounds.hpp"
#include "ccsim/combinatorics.hpp"
#include "ccsim/delivery.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/model.hpp"
#include "ccsim/placement.hpp"

using namespace ccsim;

namespace {

struct Checker {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name,
               const std::function<void(Checker&)>& body) {
  Checker c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  if (c.ok) {
    std::printf("[PASS] criterion %d: %s\n", id, name.c_str());
  } else {
    std::printf("[FAIL] criterion %d: %s (%s)\n", id, name.c_str(),
                c.detail.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "worked instance reproduced exactly", [](Checker& c) {
    const auto inst = make_instance(2, 5, Rational(4, 5), 1000, 7);
    const auto placement = place_centralized(inst);
    const DemandVector d{{0, 0, 0, 1, 1}};
    const auto msg = encode_step2(inst, placement, d, 7);
    const Step1Code& step1 = msg.central.step1;

    std::map<std::pair<int, uint32_t>, long> code_bits;
    for (size_t gi = 0; gi < step1.groups.size(); ++gi)
      code_bits[{step1.groups[gi].file, step1.groups[gi].leftover_mask}] =
          step1.codes[gi].total_bits;
    c.expect(code_bits[{0, 0u}] == 100, "C_{1,empty} != F/10");
    c.expect(code_bits[{0, 0b01000u}] == 200, "C_{1,{4}} != F/5");
    c.expect(code_bits[{0, 0b10000u}] == 200, "C_{1,{5}} != F/5");
    c.expect(code_bits[{0, 0b11000u}] == 100, "C_{1,{4,5}} != F/10");
    c.expect(code_bits[{1, 0u}] == 0, "C_{2,empty} != 0");
    for (uint32_t jm : {0b00001u, 0b00010u, 0b00100u, 0b00011u, 0b00101u, 0b00110u})
      c.expect(code_bits[{1, jm}] == 100, "second-file group code != F/10");

    c.expect(step1.total_bits == 1200, "step-1 inventory != 6F/5");
    for (int j = 0; j < 5; ++j) {
      long known = 0;
      for (size_t u = 0; u < step1.units.size(); ++u)
        if ((step1.unit_knowers[u] >> j) & 1) known += step1.unit_bits[u];
      c.expect(known == 300, "per-user reconstructible != 3F/10");
    }
    c.expect(msg.transmitted_bits == 900, "transmitted != 9F/10");

    for (int j = 0; j < 5; ++j)
      c.expect(equal_bits(decode(j, msg, placement, d),
                          placement.file_payload(d.d[j], inst.file_bits),
                          inst.file_bits),
               "user failed to decode");
    const auto mns = mns_deliver(inst, placement, d);
    c.expect(mns.transmitted_bits == 1000, "baseline != F");
    for (int j = 0; j < 5; ++j)
      c.expect(equal_bits(decode(j, mns, placement, d),
                          placement.file_payload(d.d[j], inst.file_bits),
                          inst.file_bits),
               "user failed to decode the baseline");
  });

  criterion(2, "memory thresholds exact", [](Checker& c) {
    const auto th25 = m_threshold(2, 5);
    c.expect(th25.m_th_exact && *th25.m_th_exact == Rational(6, 5),
             "M_th(2,5) != 6/5");
    const auto th48 = m_threshold(4, 8);
    c.expect(th48.discriminant == 289, "discriminant(4,8) != 289");
    c.expect(th48.m_th_exact && *th48.m_th_exact == Rational(2, 3),
             "M_th(4,8) != 2/3");
  });

  criterion(3, "centralized figure corners", [](Checker& c) {
    const auto proposed = centralized_curve(2, 10);
    const auto baseline = mns_centralized(2, 10);
    c.expect(proposed.eval(Rational(1)) == Rational(13, 18),
             "proposed envelope at M=1 != 13/18");
    c.expect(std::abs(to_double(proposed.eval(Rational(1))) - 0.722) <= 1e-3,
             "proposed corner outside 0.722 +- 0.001");
    c.expect(std::abs(to_double(baseline.eval(Rational(1))) - 0.794) <= 1e-3,
             "baseline corner outside 0.794 +- 0.001");
  });

  criterion(4, "decentralized formula corner and form agreement", [](Checker& c) {
    c.expect(std::abs(r_d(4, 8, 1.2) - 1.894) <= 1e-3,
             "R_d(4,8,1.2) outside 1.894 +- 0.001");
    Rng rng(123);
    for (int trial = 0; trial < 100; ++trial) {
      const int k = 3 + static_cast<int>(rng.below(10));
      const int n = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(k) - 2));
      const double m = n * (static_cast<double>(rng.below(1000) + 1) / 1001.0);
      c.expect(std::abs(r_d_sum(n, k, m) - r_d_closed(n, k, m)) <= 1e-9,
               "sum and closed forms disagree past 1e-9");
    }
  });

  criterion(5, "decentralized simulation within 2% of the formula", [](Checker& c) {
    const auto inst =
        make_instance(4, 8, Rational(6, 5), 100000, 1, Mode::kDecentralized);
    const auto d = worst_case_demand(inst);
    const double target = r_d(4, 8, 1.2);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      const auto placement = place_decentralized(inst, seed);
      const auto msg = deliver_decentralized(inst, placement, d, seed + 100);
      for (int j = 0; j < 8; ++j)
        c.expect(equal_bits(decode_decentralized(j, msg, placement, d),
                            placement.files[d.d[j]], inst.file_bits),
                 "decode failed at seed " + std::to_string(seed));
      const double load =
          static_cast<double>(msg.transmitted_bits) / inst.file_bits;
      c.expect(std::abs(load - target) / target <= 0.02,
               "seed " + std::to_string(seed) + " load " + std::to_string(load) +
                   " vs formula " + std::to_string(target));
    }
  });

  criterion(6, "outer bound and two-file optimality", [](Checker& c) {
    c.expect(lp_bound(2, 5, Rational(4, 5)).bound == Rational(9, 10),
             "lp bound at the worked point != 9/10");
    for (int k = 3; k <= 10; ++k) {
      for (int g = 0; g <= 40; ++g) {
        const Rational m(BigInt(g) * 2, 40);
        c.expect(lp_bound(2, k, m).bound == closed_form_bound_n2(k, m),
                 "closed form != lp at K=" + std::to_string(k));
      }
      try {
        c.expect(certify_optimality_n2(k).certified,
                 "certification failed at K=" + std::to_string(k));
      } catch (const CertificationFailedError& e) {
        c.expect(false, e.what());
      }
    }
  });

  criterion(7, "counting identities and exact simulated loads", [](Checker& c) {
    for (int k = 2; k <= 10; ++k)
      for (int g = 1; g <= k; ++g)
        for (int t = 0; t <= k; ++t) {
          for (int j = std::max(0, t - g); j <= std::min(t, k - g); ++j)
            c.expect(pascal_check(g, t, j), "Pascal step failed");
          if (g < k) {
            c.expect(vandermonde_total(g, k, t) == binom(k - 1, t),
                     "total units identity failed");
            c.expect(vandermonde_known(g, k, t) == binom(k - 2, t - 1),
                     "known units identity failed");
          }
        }
    Rng rng(777);
    int cases = 0;
    while (cases < 200) {
      const int k = 3 + static_cast<int>(rng.below(6));
      const int n = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(k) - 2));
      const int t = static_cast<int>(rng.below(static_cast<uint64_t>(k) + 1));
      const long f_bits = static_cast<long>(binom_u64(k, t));
      const Rational m(BigInt(t) * n, k);
      const auto inst = make_instance(n, k, m, f_bits, cases);
      const auto placement = place_centralized(inst);
      DemandVector d;
      d.d.resize(k);
      for (int i = 0; i < n; ++i) d.d[i] = i;
      for (int j = n; j < k; ++j) d.d[j] = static_cast<int>(rng.below(n));
      for (int j = k - 1; j > 0; --j)
        std::swap(d.d[j], d.d[rng.below(static_cast<uint64_t>(j) + 1)]);
      const auto msg = encode_step2(inst, placement, d, 3000 + cases);
      const Rational expect = r_co(n, k, m) * f_bits;
      c.expect(den(expect) == 1 &&
                   msg.transmitted_bits == num(expect).convert_to<long>(),
               "simulated load mismatch at case " + std::to_string(cases));
      ++cases;
    }
  });

  criterion(8, "monotonicity and dominance", [](Checker& c) {
    for (auto [n, k] : {std::pair{2, 10}, {4, 8}, {3, 7}}) {
      const auto proposed = centralized_curve(n, k);
      const auto baseline = mns_centralized(n, k);
      const auto& v = proposed.vertices();
      for (size_t i = 1; i < v.size(); ++i)
        c.expect(v[i].second <= v[i - 1].second, "envelope increases");
      for (size_t i = 2; i < v.size(); ++i) {
        const Rational s1 = (v[i - 1].second - v[i - 2].second) /
                            (v[i - 1].first - v[i - 2].first);
        const Rational s2 =
            (v[i].second - v[i - 1].second) / (v[i].first - v[i - 1].first);
        c.expect(s1 <= s2, "envelope not convex");
      }
      for (int t = 0; t <= k; ++t) {
        const Rational m(BigInt(t) * n, k);
        c.expect(r_co(n, k, m) <= Rational(n) - m, "R_co above N - M");
      }
      for (int g = 0; g <= 100; ++g) {
        const Rational m(BigInt(g) * n, 100);
        c.expect(proposed.eval(m) <= baseline.eval(m),
                 "proposed envelope above the baseline");
      }
    }
  });

  return failures == 0 ? 0 : 1;
}
