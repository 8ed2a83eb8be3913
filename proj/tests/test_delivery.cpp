#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <map>
#include <numeric>

#include "ccsim/analytics.hpp"
#include "ccsim/combinatorics.hpp"
#include "ccsim/delivery.hpp"
#include "ccsim/errors.hpp"

using namespace ccsim;

namespace {

const gf::Field& f8() { return gf::Field::gf8(); }

Bytes rand_payload(Rng& rng, long bits) { return random_bits(rng, bits); }

}  // namespace

TEST_CASE("staircase code round trips with unequal member sizes") {
  Rng rng(31);
  const std::vector<long> bits{100, 37, 200, 37, 5};
  const std::vector<uint32_t> knowers{0b011, 0b101, 0b000, 0b110, 0b010};
  const std::vector<int> decoders{0, 1, 2};
  std::vector<Bytes> members;
  for (long b : bits) members.push_back(rand_payload(rng, b));

  StairBlock blk = stair_encode(f8(), members, bits, knowers, decoders, rng);
  // Worst decoder (user 2) misses members 0, 3, 4 at the start.
  CHECK(blk.rows.size() == 3);
  // Rows cover strictly shrinking spans.
  for (size_t r = 1; r < blk.rows.size(); ++r)
    CHECK(blk.rows[r].size() <= blk.rows[r - 1].size());
  const long total = std::accumulate(blk.row_bits.begin(), blk.row_bits.end(), 0l);
  CHECK(total == blk.total_bits);

  for (int d : decoders) {
    std::vector<std::optional<Bytes>> known(members.size());
    for (size_t m = 0; m < members.size(); ++m)
      if ((knowers[m] >> d) & 1) known[m] = members[m];
    const auto got = stair_decode(f8(), blk.coeffs, blk.rows, bits, known);
    for (size_t m = 0; m < members.size(); ++m)
      CHECK(equal_bits(got[m], members[m], bits[m]));
  }
}

TEST_CASE("staircase code degenerates to flat rows for equal sizes") {
  Rng rng(7);
  const std::vector<long> bits{64, 64, 64, 64};
  const std::vector<uint32_t> knowers{0b0001, 0b0010, 0b0100, 0b1000};
  const std::vector<int> decoders{0, 1, 2, 3};
  std::vector<Bytes> members;
  for (long b : bits) members.push_back(rand_payload(rng, b));
  StairBlock blk = stair_encode(f8(), members, bits, knowers, decoders, rng);
  CHECK(blk.rows.size() == 3);  // each decoder misses 3 of 4
  for (const Bytes& row : blk.rows) CHECK(row.size() == 8);
  CHECK(blk.total_bits == 3 * 64);
}

TEST_CASE("worked instance: group structure and code sizes") {
  const auto inst = make_instance(2, 5, Rational(4, 5), 1000, 3);
  const auto placement = place_centralized(inst);
  const DemandVector d{{0, 0, 0, 1, 1}};
  const auto groups = build_groups(inst, placement, d);

  // File 1 (users 1-3): leftover sets {}, {4}, {5}, {4,5};
  // file 2 (users 4-5): {}, {1}, {2}, {3}, {1,2}, {1,3}, {2,3}.
  REQUIRE(groups.size() == 11);
  std::map<std::pair<int, uint32_t>, const GroupSpec*> by_key;
  for (const auto& g : groups) by_key[{g.file, g.leftover_mask}] = &g;

  const auto* g14 = by_key.at({0, 0b01000});
  REQUIRE(g14 != nullptr);
  CHECK(g14->member_masks ==
        std::vector<uint32_t>{0b01001, 0b01010, 0b01100});
  CHECK(g14->coded_rows == 2);  // C(2,1): F/5 bits of code

  CHECK(by_key.at({0, 0u})->coded_rows == 1);        // F/10
  CHECK(by_key.at({0, 0b10000})->coded_rows == 2);   // F/5
  CHECK(by_key.at({0, 0b11000})->coded_rows == 1);   // F/10
  CHECK(by_key.at({1, 0u})->coded_rows == 0);        // zero-transmission
  for (uint32_t jm : {0b00001u, 0b00010u, 0b00100u})
    CHECK(by_key.at({1, jm})->coded_rows == 1);      // F/10 each
  for (uint32_t jm : {0b00011u, 0b00101u, 0b00110u})
    CHECK(by_key.at({1, jm})->coded_rows == 1);      // F/10 each

  // Every subfile of each demanded file is in exactly one group.
  for (int file = 0; file < 2; ++file) {
    std::map<uint64_t, int> seen;
    for (const auto& g : groups)
      if (g.file == file)
        for (uint64_t r : g.member_ranks) seen[r]++;
    CHECK(seen.size() == 10);
    for (const auto& [rank, count] : seen) CHECK(count == 1);
  }
}

TEST_CASE("worked instance: step totals and exact decode") {
  const auto inst = make_instance(2, 5, Rational(4, 5), 1000, 3);
  const auto placement = place_centralized(inst);
  const DemandVector d{{0, 0, 0, 1, 1}};
  const auto msg = encode_step2(inst, placement, d, 12);

  CHECK(msg.central.step1.total_bits == 1200);  // 6F/5
  for (int j = 0; j < 5; ++j) {
    long known = 0;
    for (size_t u = 0; u < msg.central.step1.units.size(); ++u)
      if ((msg.central.step1.unit_knowers[u] >> j) & 1)
        known += msg.central.step1.unit_bits[u];
    CHECK(known == 300);  // 3F/10 locally reconstructible per user
  }
  CHECK(msg.transmitted_bits == 900);  // 9F/10
  CHECK(msg.central.step2.rows.size() == 9);

  for (int j = 0; j < 5; ++j) {
    const Bytes got = decode(j, msg, placement, d);
    const Bytes want = placement.file_payload(d.d[j], inst.file_bits);
    CHECK(equal_bits(got, want, inst.file_bits));
  }

  const auto mns = mns_deliver(inst, placement, d);
  CHECK(mns.transmitted_bits == 1000);
  for (int j = 0; j < 5; ++j) {
    const Bytes got = decode(j, mns, placement, d);
    CHECK(equal_bits(got, placement.file_payload(d.d[j], inst.file_bits),
                     inst.file_bits));
  }
}

TEST_CASE("step-2 size formula and endpoints") {
  // t = 0: no side information, the broadcast degenerates to all N files.
  {
    const auto inst = make_instance(2, 5, Rational(0), 1000, 1);
    const auto placement = place_centralized(inst);
    const auto d = worst_case_demand(inst);
    const auto msg = encode_step2(inst, placement, d, 4);
    CHECK(msg.transmitted_bits == 2000);
    for (int j = 0; j < 5; ++j)
      CHECK(equal_bits(decode(j, msg, placement, d),
                       placement.file_payload(d.d[j], inst.file_bits),
                       inst.file_bits));
  }
  // t = K: everything cached, nothing transmitted.
  {
    const auto inst = make_instance(2, 5, Rational(2), 1000, 1);
    const auto placement = place_centralized(inst);
    const auto d = worst_case_demand(inst);
    const auto msg = encode_step2(inst, placement, d, 4);
    CHECK(msg.transmitted_bits == 0);
    CHECK(mns_deliver(inst, placement, d).transmitted_bits == 0);
    for (int j = 0; j < 5; ++j)
      CHECK(equal_bits(decode(j, msg, placement, d),
                       placement.file_payload(d.d[j], inst.file_bits),
                       inst.file_bits));
  }
}

TEST_CASE("transmitted bits equal the closed-form load for any surjective demand") {
  Rng rng(2024);
  int cases = 0;
  for (int k = 3; k <= 7 && cases < 40; ++k) {
    for (int n = 2; n < k; ++n) {
      for (int t = 1; t < k; ++t) {
        if (cases >= 40) break;
        const uint64_t parts = binom_u64(k, t);
        const long f_bits = static_cast<long>(parts) * 8;
        const Rational m(BigInt(t) * n, k);
        const auto inst = make_instance(n, k, m, f_bits, 5 + cases);
        const auto placement = place_centralized(inst);
        // Random surjective demand.
        DemandVector d;
        d.d.resize(k);
        for (int i = 0; i < n; ++i) d.d[i] = i;
        for (int j = n; j < k; ++j) d.d[j] = static_cast<int>(rng.below(n));
        for (int j = k - 1; j > 0; --j)
          std::swap(d.d[j], d.d[rng.below(static_cast<uint64_t>(j) + 1)]);
        REQUIRE(d.surjective(n));

        const auto msg = encode_step2(inst, placement, d, 1 + cases);
        const Rational expect = r_co(n, k, m) * f_bits;
        REQUIRE(den(expect) == 1);
        CHECK(msg.transmitted_bits == num(expect).convert_to<long>());
        const int probe = static_cast<int>(rng.below(k));
        CHECK(equal_bits(decode(probe, msg, placement, d),
                         placement.file_payload(d.d[probe], inst.file_bits),
                         inst.file_bits));
        ++cases;
      }
    }
  }
  CHECK(cases == 40);
}

TEST_CASE("non-surjective demands reduce the instance and never cost more") {
  const auto inst = make_instance(3, 6, Rational(1), 150, 5);
  const auto placement = place_centralized(inst);
  const DemandVector partial{{0, 0, 2, 2, 0, 2}};  // file 1 undemanded
  const auto msg = encode_step2(inst, placement, partial, 6);
  const auto worst = encode_step2(inst, placement, worst_case_demand(inst), 6);
  CHECK(msg.transmitted_bits <= worst.transmitted_bits);
  for (int j = 0; j < 6; ++j)
    CHECK(equal_bits(decode(j, msg, placement, partial),
                     placement.file_payload(partial.d[j], inst.file_bits),
                     inst.file_bits));
}

TEST_CASE("decentralized delivery decodes exactly and picks per-level schemes") {
  const auto inst = make_instance(2, 5, Rational(1), 4000, 11, Mode::kDecentralized);
  const auto placement = place_decentralized(inst, 11);
  const auto d = worst_case_demand(inst);
  const auto msg = deliver_decentralized(inst, placement, d, 22);
  CHECK(msg.transmitted_bits > 0);
  long level_sum = 0;
  for (const auto& lm : msg.levels) level_sum += lm.bits;
  CHECK(level_sum == msg.transmitted_bits);

  for (int j = 0; j < 5; ++j) {
    const Bytes got = decode_decentralized(j, msg, placement, d);
    CHECK(equal_bits(got, placement.files[d.d[j]], inst.file_bits));
  }

  // Same seed reproduces the transcript bit for bit.
  const auto again = deliver_decentralized(inst, placement, d, 22);
  CHECK(transmission_transcript(again) == transmission_transcript(msg));
}

TEST_CASE("decentralized endpoints") {
  {
    const auto inst = make_instance(2, 5, Rational(2), 500, 1, Mode::kDecentralized);
    const auto placement = place_decentralized(inst, 2);
    const auto d = worst_case_demand(inst);
    const auto msg = deliver_decentralized(inst, placement, d, 3);
    CHECK(msg.transmitted_bits == 0);
    for (int j = 0; j < 5; ++j)
      CHECK(equal_bits(decode_decentralized(j, msg, placement, d),
                       placement.files[d.d[j]], inst.file_bits));
  }
  {
    const auto inst = make_instance(2, 5, Rational(0), 500, 1, Mode::kDecentralized);
    const auto placement = place_decentralized(inst, 2);
    const auto d = worst_case_demand(inst);
    const auto msg = deliver_decentralized(inst, placement, d, 3);
    CHECK(msg.transmitted_bits == 2 * 500);  // send both files once
    for (int j = 0; j < 5; ++j)
      CHECK(equal_bits(decode_decentralized(j, msg, placement, d),
                       placement.files[d.d[j]], inst.file_bits));
  }
}

TEST_CASE("randomized decentralized battery") {
  Rng rng(404);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = 4 + static_cast<int>(rng.below(3));
    const int n = 2 + static_cast<int>(rng.below(static_cast<uint64_t>(k) - 2));
    const Rational m(1 + static_cast<long>(rng.below(2u * n - 1)), 2);
    const auto inst = make_instance(n, k, m, 1500, trial, Mode::kDecentralized);
    const auto placement = place_decentralized(inst, 50 + trial);
    DemandVector d;
    d.d.resize(k);
    for (int i = 0; i < n; ++i) d.d[i] = i;
    for (int j = n; j < k; ++j) d.d[j] = static_cast<int>(rng.below(n));
    const auto msg = deliver_decentralized(inst, placement, d, 70 + trial);
    for (int j = 0; j < k; ++j)
      CHECK(equal_bits(decode_decentralized(j, msg, placement, d),
                       placement.files[d.d[j]], inst.file_bits));
  }
}

TEST_CASE("randomized centralized decode battery") {
  Rng rng(909);
  int trials = 0;
  while (trials < 60) {
    const int k = 3 + static_cast<int>(rng.below(6));  // 3..8
    const int n = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(k) - 1));
    if (n < 1 || n >= k) continue;
    const int t = static_cast<int>(rng.below(static_cast<uint64_t>(k) + 1));
    const uint64_t parts = binom_u64(k, t);
    const long f_bits = static_cast<long>(parts) * (1 + (trials % 3));
    const Rational m(BigInt(t) * n, k);
    const auto inst = make_instance(n, k, m, f_bits, trials);
    const auto placement = place_centralized(inst);
    DemandVector d;
    d.d.resize(k);
    for (int i = 0; i < n && i < k; ++i) d.d[i] = i;
    for (int j = n; j < k; ++j) d.d[j] = static_cast<int>(rng.below(n));
    for (int j = k - 1; j > 0; --j)
      std::swap(d.d[j], d.d[rng.below(static_cast<uint64_t>(j) + 1)]);
    const auto msg = encode_step2(inst, placement, d, 1000 + trials);
    for (int j = 0; j < k; ++j)
      CHECK(equal_bits(decode(j, msg, placement, d),
                       placement.file_payload(d.d[j], inst.file_bits),
                       inst.file_bits));
    ++trials;
  }
}
