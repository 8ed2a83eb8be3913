#include "ccsim/delivery.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <sstream>

#include "ccsim/combinatorics.hpp"
#include "ccsim/errors.hpp"

namespace ccsim {

namespace {

const gf::Field& field() { return gf::Field::gf8(); }

std::vector<int> mask_members(uint32_t mask) {
  std::vector<int> out;
  for (int j = 0; mask >> j; ++j)
    if ((mask >> j) & 1) out.push_back(j);
  return out;
}

// Maps a mask over indices [0:positions.size()) to a mask over user ids.
uint32_t scatter_mask(uint32_t idx_mask, const std::vector<int>& positions) {
  uint32_t out = 0;
  for (size_t b = 0; b < positions.size(); ++b)
    if ((idx_mask >> b) & 1) out |= 1u << positions[b];
  return out;
}

std::vector<long> sorted_cuts(std::span<const long> lengths) {
  std::vector<long> cuts(lengths.begin(), lengths.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  while (!cuts.empty() && cuts.front() <= 0) cuts.erase(cuts.begin());
  return cuts;
}

// Worst-case number of simultaneously unknown members among those still
// active past position b0.
int segment_need(std::span<const long> lengths, std::span<const uint32_t> knowers,
                 std::span<const int> decoders, long b0) {
  int need = 0;
  for (int d : decoders) {
    int unknown = 0;
    for (size_t m = 0; m < lengths.size(); ++m)
      if (lengths[m] > b0 && !((knowers[m] >> d) & 1)) ++unknown;
    need = std::max(need, unknown);
  }
  return need;
}

// dst = c * src, symbol-wise.
Bytes scaled(const gf::Field& f, const Bytes& src, uint16_t c) {
  Bytes out(src.size(), 0);
  gf::mul_add(f, out, src, c);
  return out;
}

// Solves a * x = b over byte-buffer right-hand sides; a must be rows x cols
// with rows >= cols. Buffers in b share one width.
std::optional<std::vector<Bytes>> solve_block(const gf::Field& f, gf::Matrix a,
                                              std::vector<Bytes> b) {
  const size_t rows = a.rows(), cols = a.cols();
  for (size_t c = 0; c < cols; ++c) {
    size_t pivot = c;
    while (pivot < rows && a.at(pivot, c) == 0) ++pivot;
    if (pivot == rows) return std::nullopt;
    if (pivot != c) {
      for (size_t cc = 0; cc < cols; ++cc) std::swap(a.at(pivot, cc), a.at(c, cc));
      std::swap(b[pivot], b[c]);
    }
    for (size_t r = 0; r < rows; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      const uint16_t factor = f.div(a.at(r, c), a.at(c, c));
      for (size_t cc = c; cc < cols; ++cc)
        a.at(r, cc) = f.sub(a.at(r, cc), f.mul(factor, a.at(c, cc)));
      gf::mul_add(f, b[r], b[c], factor);
    }
  }
  std::vector<Bytes> x(cols);
  for (size_t c = 0; c < cols; ++c) x[c] = scaled(f, b[c], f.inv(a.at(c, c)));
  return x;
}

}  // namespace

StairCost stair_cost(std::span<const long> member_bits,
                     std::span<const uint32_t> knower_masks,
                     std::span<const int> decoders) {
  StairCost cost;
  const size_t n = member_bits.size();
  std::vector<long> byte_len(n);
  for (size_t m = 0; m < n; ++m)
    byte_len[m] = static_cast<long>(packed_size(member_bits[m]));

  cost.rows = segment_need(member_bits, knower_masks, decoders, 0);
  cost.row_bits.assign(cost.rows, 0);
  cost.row_bytes.assign(cost.rows, 0);

  long b0 = 0;
  for (long b1 : sorted_cuts(member_bits)) {
    const int need = segment_need(member_bits, knower_masks, decoders, b0);
    for (int r = 0; r < need; ++r) cost.row_bits[r] += b1 - b0;
    b0 = b1;
  }
  b0 = 0;
  for (long b1 : sorted_cuts(byte_len)) {
    const int need = segment_need(byte_len, knower_masks, decoders, b0);
    for (int r = 0; r < need; ++r) cost.row_bytes[r] = static_cast<size_t>(b1);
    b0 = b1;
  }
  for (long bits : cost.row_bits) cost.total_bits += bits;
  return cost;
}

StairBlock stair_encode(const gf::Field& f, std::span<const Bytes> members,
                        std::span<const long> member_bits,
                        std::span<const uint32_t> knower_masks,
                        std::span<const int> decoders, Rng& rng, int retries) {
  const StairCost cost = stair_cost(member_bits, knower_masks, decoders);
  const size_t n = members.size();
  std::vector<long> byte_len(n);
  for (size_t m = 0; m < n; ++m)
    byte_len[m] = static_cast<long>(packed_size(member_bits[m]));
  const std::vector<long> cuts = sorted_cuts(byte_len);

  StairBlock blk;
  blk.row_bytes = cost.row_bytes;
  blk.row_bits = cost.row_bits;
  blk.member_bits.assign(member_bits.begin(), member_bits.end());
  blk.knower_masks.assign(knower_masks.begin(), knower_masks.end());
  blk.total_bits = cost.total_bits;

  for (int attempt = 0; attempt < retries; ++attempt) {
    gf::Matrix coeffs(static_cast<size_t>(cost.rows), n);
    for (int r = 0; r < cost.rows; ++r)
      for (size_t m = 0; m < n; ++m) coeffs.at(r, m) = rng.coefficient(f);

    bool ok = true;
    long b0 = 0;
    for (long b1 : cuts) {
      const size_t covering =
          static_cast<size_t>(segment_need(byte_len, knower_masks, decoders, b0));
      for (int d : decoders) {
        std::vector<size_t> unknown;
        for (size_t m = 0; m < n; ++m)
          if (byte_len[m] > b0 && !((knower_masks[m] >> d) & 1)) unknown.push_back(m);
        if (unknown.empty()) continue;
        gf::Matrix sub(covering, unknown.size());
        for (size_t r = 0; r < covering; ++r)
          for (size_t c = 0; c < unknown.size(); ++c)
            sub.at(r, c) = coeffs.at(r, unknown[c]);
        if (!gf::full_column_rank(f, sub)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      b0 = b1;
    }
    if (!ok) continue;

    blk.coeffs = std::move(coeffs);
    blk.rows = gf::encode_blocks(f, blk.coeffs, members, blk.row_bytes);
    return blk;
  }
  throw RankDeficientError("no decodable coefficient draw within retry budget");
}

std::vector<Bytes> stair_decode(const gf::Field& f, const gf::Matrix& coeffs,
                                std::span<const Bytes> rows,
                                std::span<const long> member_bits,
                                const std::vector<std::optional<Bytes>>& known) {
  const size_t n = member_bits.size();
  std::vector<long> byte_len(n);
  for (size_t m = 0; m < n; ++m)
    byte_len[m] = static_cast<long>(packed_size(member_bits[m]));

  std::vector<Bytes> out(n);
  for (size_t m = 0; m < n; ++m)
    out[m] = known[m] ? *known[m] : Bytes(static_cast<size_t>(byte_len[m]), 0);

  long b0 = 0;
  for (long b1 : sorted_cuts(byte_len)) {
    std::vector<size_t> unknown;
    for (size_t m = 0; m < n; ++m)
      if (byte_len[m] > b0 && !known[m]) unknown.push_back(m);
    if (!unknown.empty()) {
      std::vector<size_t> covering;
      for (size_t r = 0; r < rows.size(); ++r)
        if (static_cast<long>(rows[r].size()) >= b1) covering.push_back(r);
      const size_t width = static_cast<size_t>(b1 - b0);
      gf::Matrix a(covering.size(), unknown.size());
      std::vector<Bytes> rhs(covering.size());
      for (size_t rr = 0; rr < covering.size(); ++rr) {
        const size_t r = covering[rr];
        for (size_t c = 0; c < unknown.size(); ++c)
          a.at(rr, c) = coeffs.at(r, unknown[c]);
        rhs[rr].assign(rows[r].begin() + b0, rows[r].begin() + b1);
        for (size_t m = 0; m < n; ++m) {
          if (!known[m] || byte_len[m] <= b0 || coeffs.at(r, m) == 0) continue;
          gf::mul_add(f, rhs[rr],
                      std::span<const uint8_t>(out[m].data() + b0, width),
                      coeffs.at(r, m));
        }
      }
      auto x = solve_block(f, std::move(a), std::move(rhs));
      if (!x) throw RankDeficientError("coded block not solvable at decode time");
      for (size_t c = 0; c < unknown.size(); ++c)
        std::copy(x->at(c).begin(), x->at(c).end(),
                  out[unknown[c]].begin() + b0);
    }
    b0 = b1;
  }
  return out;
}

// ---- centralized ----------------------------------------------------------

std::vector<GroupSpec> build_groups(const ProblemInstance& inst,
                                    const CentralizedPlacement& placement,
                                    const DemandVector& demands) {
  const int k = inst.num_users, t = placement.cache_level;
  const auto gmasks = demand_group_masks(demands, inst.num_files);
  std::vector<GroupSpec> groups;
  for (int i = 0; i < inst.num_files; ++i) {
    if (gmasks[i] == 0) continue;
    const int g = std::popcount(gmasks[i]);
    const std::vector<int> inside = mask_members(gmasks[i]);
    const std::vector<int> outside = mask_members(~gmasks[i] & ((1u << k) - 1));
    const int lo = std::max(0, t - g), hi = std::min(t, k - g);
    for (int jsz = lo; jsz <= hi; ++jsz) {
      for (uint32_t jm : masks_of_size(static_cast<int>(outside.size()), jsz)) {
        GroupSpec grp;
        grp.file = i;
        grp.leftover_mask = scatter_mask(jm, outside);
        for (uint32_t sub : masks_of_size(g, t - jsz))
          grp.member_masks.push_back(grp.leftover_mask | scatter_mask(sub, inside));
        std::sort(grp.member_masks.begin(), grp.member_masks.end());
        for (uint32_t w : grp.member_masks) {
          grp.member_ranks.push_back(mask_rank_colex(w));
          grp.member_bits.push_back(placement.subfile_bits);
        }
        grp.coded_rows = static_cast<int>(binom_u64(g - 1, t - jsz));
        groups.push_back(std::move(grp));
      }
    }
  }
  return groups;
}

Step1Code encode_step1(const ProblemInstance& inst,
                       const CentralizedPlacement& placement,
                       const DemandVector& demands,
                       const std::vector<GroupSpec>& groups, Rng& rng) {
  const auto gmasks = demand_group_masks(demands, inst.num_files);
  Step1Code step1;
  step1.groups = groups;
  step1.codes.reserve(groups.size());
  for (size_t gi = 0; gi < groups.size(); ++gi) {
    const GroupSpec& grp = groups[gi];
    std::vector<Bytes> members;
    for (uint64_t rank : grp.member_ranks)
      members.push_back(placement.subfiles[grp.file][rank]);
    const std::vector<int> decoders = mask_members(gmasks[grp.file]);
    StairBlock blk = stair_encode(field(), members, grp.member_bits,
                                  grp.member_masks, decoders, rng);
    assert(static_cast<int>(blk.rows.size()) == grp.coded_rows);
    for (size_t r = 0; r < blk.rows.size(); ++r) {
      step1.units.emplace_back(gi, r);
      step1.unit_knowers.push_back(grp.leftover_mask);
      step1.unit_bits.push_back(blk.row_bits[r]);
      step1.total_bits += blk.row_bits[r];
    }
    step1.codes.push_back(std::move(blk));
  }
  return step1;
}

BroadcastMessage encode_step2(const ProblemInstance& inst,
                              const CentralizedPlacement& placement,
                              const DemandVector& demands, uint64_t seed) {
  Rng root(seed);
  Rng rng1 = root.split(1), rng2 = root.split(2);
  BroadcastMessage msg;
  msg.mode = Mode::kCentralized;
  msg.scheme = Scheme::kProposed;
  msg.seed = seed;

  const auto groups = build_groups(inst, placement, demands);
  msg.central.step1 = encode_step1(inst, placement, demands, groups, rng1);

  std::vector<Bytes> units;
  for (const auto& [gi, r] : msg.central.step1.units)
    units.push_back(msg.central.step1.codes[gi].rows[r]);
  std::vector<int> all_users(inst.num_users);
  for (int j = 0; j < inst.num_users; ++j) all_users[j] = j;
  msg.central.step2 =
      stair_encode(field(), units, msg.central.step1.unit_bits,
                   msg.central.step1.unit_knowers, all_users, rng2);
  msg.central.bits = msg.central.step2.total_bits;
  msg.transmitted_bits = msg.central.bits;
  return msg;
}

BroadcastMessage mns_deliver(const ProblemInstance& inst,
                             const CentralizedPlacement& placement,
                             const DemandVector& demands) {
  const int t = placement.cache_level;
  BroadcastMessage msg;
  msg.mode = Mode::kCentralized;
  msg.scheme = Scheme::kMns;
  for (uint32_t s : masks_of_size(inst.num_users, t + 1)) {
    Bytes buf(packed_size(placement.subfile_bits), 0);
    for (int kk : mask_members(s)) {
      const uint64_t rank = mask_rank_colex(s & ~(1u << kk));
      const Bytes& sf = placement.subfiles[demands.d[kk]][rank];
      for (size_t b = 0; b < buf.size(); ++b) buf[b] ^= sf[b];
    }
    msg.central_mns.subsets.push_back(s);
    msg.central_mns.payloads.push_back(std::move(buf));
    msg.central_mns.payload_bits.push_back(placement.subfile_bits);
    msg.central_mns.bits += placement.subfile_bits;
  }
  msg.transmitted_bits = msg.central_mns.bits;
  return msg;
}

namespace {

Bytes assemble_centralized(int user, int file,
                           const CentralizedPlacement& placement, long file_bits,
                           const std::map<uint64_t, Bytes>& recovered) {
  Bytes out(packed_size(file_bits), 0);
  long pos = 0;
  for (size_t rank = 0; rank < placement.subsets.size(); ++rank) {
    const Bytes& sf = placement.user_caches(user, rank)
                          ? placement.subfiles[file][rank]
                          : recovered.at(rank);
    for (long b = 0; b < placement.subfile_bits; ++b, ++pos)
      bit_set(out, pos, bit_get(sf, b));
  }
  return out;
}

}  // namespace

Bytes decode(int user, const BroadcastMessage& msg,
             const CentralizedPlacement& placement, const DemandVector& demands) {
  const int file = demands.d[user];
  std::map<uint64_t, Bytes> recovered;

  if (msg.scheme == Scheme::kMns) {
    for (size_t i = 0; i < msg.central_mns.subsets.size(); ++i) {
      const uint32_t s = msg.central_mns.subsets[i];
      if (!((s >> user) & 1)) continue;
      Bytes buf = msg.central_mns.payloads[i];
      for (int kk : mask_members(s)) {
        if (kk == user) continue;
        const Bytes& sf =
            placement.subfiles[demands.d[kk]][mask_rank_colex(s & ~(1u << kk))];
        for (size_t b = 0; b < buf.size(); ++b) buf[b] ^= sf[b];
      }
      recovered[mask_rank_colex(s & ~(1u << user))] = std::move(buf);
    }
    return assemble_centralized(user, file, placement, placement.subfile_bits *
                                    static_cast<long>(placement.subsets.size()),
                                recovered);
  }

  const Step1Code& step1 = msg.central.step1;
  std::vector<std::optional<Bytes>> known_units(step1.units.size());
  std::map<size_t, std::vector<Bytes>> local_rows;
  for (size_t gi = 0; gi < step1.groups.size(); ++gi) {
    const GroupSpec& grp = step1.groups[gi];
    if (!((grp.leftover_mask >> user) & 1)) continue;
    std::vector<Bytes> members;
    for (uint64_t rank : grp.member_ranks)
      members.push_back(placement.subfiles[grp.file][rank]);
    local_rows[gi] = gf::encode_blocks(field(), step1.codes[gi].coeffs, members,
                                       step1.codes[gi].row_bytes);
  }
  for (size_t u = 0; u < step1.units.size(); ++u) {
    const auto& [gi, r] = step1.units[u];
    if (auto it = local_rows.find(gi); it != local_rows.end())
      known_units[u] = it->second[r];
  }

  const std::vector<Bytes> all_units =
      stair_decode(field(), msg.central.step2.coeffs, msg.central.step2.rows,
                   step1.unit_bits, known_units);

  std::vector<std::vector<Bytes>> group_rows(step1.groups.size());
  for (size_t u = 0; u < step1.units.size(); ++u) {
    const auto& [gi, r] = step1.units[u];
    if (step1.groups[gi].file != file) continue;
    auto& rows = group_rows[gi];
    if (rows.size() <= r) rows.resize(r + 1);
    rows[r] = all_units[u];
  }
  for (size_t gi = 0; gi < step1.groups.size(); ++gi) {
    const GroupSpec& grp = step1.groups[gi];
    if (grp.file != file) continue;
    std::vector<std::optional<Bytes>> known(grp.member_masks.size());
    for (size_t m = 0; m < grp.member_masks.size(); ++m)
      if ((grp.member_masks[m] >> user) & 1)
        known[m] = placement.subfiles[file][grp.member_ranks[m]];
    const std::vector<Bytes> members =
        stair_decode(field(), step1.codes[gi].coeffs, group_rows[gi],
                     grp.member_bits, known);
    for (size_t m = 0; m < members.size(); ++m)
      recovered[grp.member_ranks[m]] = members[m];
  }
  return assemble_centralized(user, file, placement, placement.subfile_bits *
                                  static_cast<long>(placement.subsets.size()),
                              recovered);
}

// ---- decentralized --------------------------------------------------------

namespace {

struct LevelPlan {
  std::vector<GroupSpec> groups;
};

LevelPlan level_plan(const ProblemInstance& inst,
                     const DecentralizedPlacement& placement,
                     const std::vector<uint32_t>& gmasks, int level) {
  LevelPlan plan;
  for (int i = 0; i < inst.num_files; ++i) {
    if (gmasks[i] == 0) continue;
    std::map<uint32_t, GroupSpec> by_leftover;
    for (const auto& [mask, positions] : placement.classes[i]) {
      if (std::popcount(mask) != level) continue;
      GroupSpec& grp = by_leftover[mask & ~gmasks[i]];
      grp.file = i;
      grp.leftover_mask = mask & ~gmasks[i];
      grp.member_masks.push_back(mask);
      grp.member_bits.push_back(static_cast<long>(positions.size()));
    }
    for (auto& [jm, grp] : by_leftover) plan.groups.push_back(std::move(grp));
  }
  return plan;
}

long two_step_cost(const ProblemInstance& inst, const LevelPlan& plan,
                   const std::vector<uint32_t>& gmasks) {
  std::vector<long> unit_bits;
  std::vector<uint32_t> unit_knowers;
  for (const GroupSpec& grp : plan.groups) {
    const std::vector<int> decoders = mask_members(gmasks[grp.file]);
    const StairCost c = stair_cost(grp.member_bits, grp.member_masks, decoders);
    for (long bits : c.row_bits) {
      unit_bits.push_back(bits);
      unit_knowers.push_back(grp.leftover_mask);
    }
  }
  std::vector<int> all_users(inst.num_users);
  for (int j = 0; j < inst.num_users; ++j) all_users[j] = j;
  return stair_cost(unit_bits, unit_knowers, all_users).total_bits;
}

long mns_level_cost(const ProblemInstance& inst,
                    const DecentralizedPlacement& placement,
                    const DemandVector& demands, int level) {
  long total = 0;
  for (uint32_t s : masks_of_size(inst.num_users, level + 1)) {
    long widest = 0;
    for (int kk : mask_members(s))
      widest = std::max(widest,
                        placement.class_bits(demands.d[kk], s & ~(1u << kk)));
    total += widest;
  }
  return total;
}

}  // namespace

BroadcastMessage deliver_decentralized(const ProblemInstance& inst,
                                       const DecentralizedPlacement& placement,
                                       const DemandVector& demands,
                                       uint64_t seed) {
  const auto gmasks = demand_group_masks(demands, inst.num_files);
  Rng root(seed);
  BroadcastMessage msg;
  msg.mode = Mode::kDecentralized;
  msg.scheme = Scheme::kProposed;
  msg.seed = seed;

  std::vector<int> all_users(inst.num_users);
  for (int j = 0; j < inst.num_users; ++j) all_users[j] = j;

  for (int level = 0; level < inst.num_users; ++level) {
    LevelPlan plan = level_plan(inst, placement, gmasks, level);
    const long mns_cost = mns_level_cost(inst, placement, demands, level);
    if (plan.groups.empty() && mns_cost == 0) continue;

    LevelMessage lm;
    lm.level = level;
    lm.two_step = !plan.groups.empty() &&
                  two_step_cost(inst, plan, gmasks) <= mns_cost;
    if (lm.two_step) {
      Rng rng = root.split(100 + static_cast<uint64_t>(level));
      lm.ts.step1.groups = plan.groups;
      for (size_t gi = 0; gi < plan.groups.size(); ++gi) {
        const GroupSpec& grp = plan.groups[gi];
        std::vector<Bytes> members;
        for (uint32_t mask : grp.member_masks)
          members.push_back(placement.class_payload(grp.file, mask));
        const std::vector<int> decoders = mask_members(gmasks[grp.file]);
        StairBlock blk = stair_encode(field(), members, grp.member_bits,
                                      grp.member_masks, decoders, rng);
        for (size_t r = 0; r < blk.rows.size(); ++r) {
          lm.ts.step1.units.emplace_back(gi, r);
          lm.ts.step1.unit_knowers.push_back(grp.leftover_mask);
          lm.ts.step1.unit_bits.push_back(blk.row_bits[r]);
          lm.ts.step1.total_bits += blk.row_bits[r];
        }
        lm.ts.step1.codes.push_back(std::move(blk));
      }
      std::vector<Bytes> units;
      for (const auto& [gi, r] : lm.ts.step1.units)
        units.push_back(lm.ts.step1.codes[gi].rows[r]);
      lm.ts.step2 = stair_encode(field(), units, lm.ts.step1.unit_bits,
                                 lm.ts.step1.unit_knowers, all_users, rng);
      lm.ts.bits = lm.ts.step2.total_bits;
      lm.bits = lm.ts.bits;
    } else {
      for (uint32_t s : masks_of_size(inst.num_users, level + 1)) {
        long widest = 0;
        for (int kk : mask_members(s))
          widest = std::max(widest,
                            placement.class_bits(demands.d[kk], s & ~(1u << kk)));
        if (widest == 0) continue;
        Bytes buf(packed_size(widest), 0);
        for (int kk : mask_members(s)) {
          const Bytes part =
              placement.class_payload(demands.d[kk], s & ~(1u << kk));
          for (size_t b = 0; b < part.size(); ++b) buf[b] ^= part[b];
        }
        lm.mns.subsets.push_back(s);
        lm.mns.payloads.push_back(std::move(buf));
        lm.mns.payload_bits.push_back(widest);
        lm.mns.bits += widest;
      }
      lm.bits = lm.mns.bits;
    }
    msg.transmitted_bits += lm.bits;
    msg.levels.push_back(std::move(lm));
  }
  return msg;
}

Bytes decode_decentralized(int user, const BroadcastMessage& msg,
                           const DecentralizedPlacement& placement,
                           const DemandVector& demands) {
  const int file = demands.d[user];
  std::map<uint32_t, Bytes> recovered;

  for (const LevelMessage& lm : msg.levels) {
    if (lm.two_step) {
      const Step1Code& step1 = lm.ts.step1;
      std::vector<std::optional<Bytes>> known_units(step1.units.size());
      std::map<size_t, std::vector<Bytes>> local_rows;
      for (size_t gi = 0; gi < step1.groups.size(); ++gi) {
        const GroupSpec& grp = step1.groups[gi];
        if (!((grp.leftover_mask >> user) & 1)) continue;
        std::vector<Bytes> members;
        for (uint32_t mask : grp.member_masks)
          members.push_back(placement.class_payload(grp.file, mask));
        local_rows[gi] = gf::encode_blocks(field(), step1.codes[gi].coeffs,
                                           members, step1.codes[gi].row_bytes);
      }
      for (size_t u = 0; u < step1.units.size(); ++u) {
        const auto& [gi, r] = step1.units[u];
        if (auto it = local_rows.find(gi); it != local_rows.end())
          known_units[u] = it->second[r];
      }
      const std::vector<Bytes> all_units =
          stair_decode(field(), lm.ts.step2.coeffs, lm.ts.step2.rows,
                       step1.unit_bits, known_units);

      std::vector<std::vector<Bytes>> group_rows(step1.groups.size());
      for (size_t u = 0; u < step1.units.size(); ++u) {
        const auto& [gi, r] = step1.units[u];
        if (step1.groups[gi].file != file) continue;
        auto& rows = group_rows[gi];
        if (rows.size() <= r) rows.resize(r + 1);
        rows[r] = all_units[u];
      }
      for (size_t gi = 0; gi < step1.groups.size(); ++gi) {
        const GroupSpec& grp = step1.groups[gi];
        if (grp.file != file) continue;
        std::vector<std::optional<Bytes>> known(grp.member_masks.size());
        for (size_t m = 0; m < grp.member_masks.size(); ++m)
          if ((grp.member_masks[m] >> user) & 1)
            known[m] = placement.class_payload(file, grp.member_masks[m]);
        const std::vector<Bytes> members =
            stair_decode(field(), step1.codes[gi].coeffs, group_rows[gi],
                         grp.member_bits, known);
        for (size_t m = 0; m < members.size(); ++m)
          if (!((grp.member_masks[m] >> user) & 1))
            recovered[grp.member_masks[m]] = members[m];
      }
    } else {
      for (size_t i = 0; i < lm.mns.subsets.size(); ++i) {
        const uint32_t s = lm.mns.subsets[i];
        if (!((s >> user) & 1)) continue;
        const uint32_t target = s & ~(1u << user);
        const long target_bits = placement.class_bits(file, target);
        if (target_bits == 0) continue;
        Bytes buf = lm.mns.payloads[i];
        for (int kk : mask_members(s)) {
          if (kk == user) continue;
          const Bytes part =
              placement.class_payload(demands.d[kk], s & ~(1u << kk));
          for (size_t b = 0; b < part.size(); ++b) buf[b] ^= part[b];
        }
        buf.resize(packed_size(target_bits));
        mask_tail(buf, target_bits);
        recovered[target] = std::move(buf);
      }
    }
  }

  Bytes out(placement.files[file].size(), 0);
  for (const auto& [mask, positions] : placement.classes[file]) {
    const Bytes src = ((mask >> user) & 1) ? placement.class_payload(file, mask)
                                           : recovered.at(mask);
    for (size_t b = 0; b < positions.size(); ++b)
      bit_set(out, positions[b], bit_get(src, static_cast<long>(b)));
  }
  return out;
}

std::string transmission_transcript(const BroadcastMessage& msg) {
  std::ostringstream out;
  auto dump_two_step = [&out](const TwoStepMessage& ts, const std::string& tag) {
    for (size_t gi = 0; gi < ts.step1.groups.size(); ++gi) {
      const GroupSpec& grp = ts.step1.groups[gi];
      out << tag << " group file " << grp.file + 1 << " leftover 0x" << std::hex
          << grp.leftover_mask << std::dec << " rows "
          << ts.step1.codes[gi].rows.size() << '\n';
    }
    for (size_t r = 0; r < ts.step2.rows.size(); ++r)
      out << tag << " tx row " << r << " bits " << ts.step2.row_bits[r]
          << " payload " << std::hex << digest(ts.step2.rows[r]) << std::dec
          << '\n';
  };
  auto dump_mns = [&out](const MnsMessage& mns, const std::string& tag) {
    for (size_t i = 0; i < mns.subsets.size(); ++i)
      out << tag << " xor subset 0x" << std::hex << mns.subsets[i] << " payload "
          << digest(mns.payloads[i]) << std::dec << " bits "
          << mns.payload_bits[i] << '\n';
  };
  if (msg.mode == Mode::kCentralized) {
    if (msg.scheme == Scheme::kProposed)
      dump_two_step(msg.central, "central");
    else
      dump_mns(msg.central_mns, "central");
  } else {
    for (const LevelMessage& lm : msg.levels) {
      const std::string tag = "level " + std::to_string(lm.level);
      if (lm.two_step)
        dump_two_step(lm.ts, tag);
      else
        dump_mns(lm.mns, tag);
    }
  }
  out << "total bits " << msg.transmitted_bits << '\n';
  return out.str();
}

}  // namespace ccsim
