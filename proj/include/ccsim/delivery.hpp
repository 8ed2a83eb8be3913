#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ccsim/bytes.hpp"
#include "ccsim/gf.hpp"
#include "ccsim/model.hpp"
#include "ccsim/placement.hpp"

namespace ccsim {

// One multicast group O_{i,J}: the subfiles of file i whose knower set
// outside the demand group equals the leftover set J.
struct GroupSpec {
  int file = 0;
  uint32_t leftover_mask = 0;            // J
  std::vector<uint32_t> member_masks;    // knower set per member subfile
  std::vector<uint64_t> member_ranks;    // centralized: colex subfile ids
  std::vector<long> member_bits;
  int coded_rows = 0;                    // rows needed; 0 marks no transmission
};

// ---- staircase random linear code ----------------------------------------
//
// Random linear code over unequal-length members. Row r only spans the byte
// positions where more than r members are simultaneously unknown to some
// decoder, so padding never inflates the transmission beyond what the worst
// decoder needs. row_bits carries the bit-exact accounting (sub-byte padding
// is removable by coding at bit granularity, so it is not counted).
struct StairCost {
  int rows = 0;
  std::vector<size_t> row_bytes;
  std::vector<long> row_bits;
  long total_bits = 0;
};

StairCost stair_cost(std::span<const long> member_bits,
                     std::span<const uint32_t> knower_masks,
                     std::span<const int> decoders);

struct StairBlock {
  gf::Matrix coeffs;  // rows x members
  std::vector<Bytes> rows;
  std::vector<size_t> row_bytes;
  std::vector<long> row_bits;
  std::vector<long> member_bits;
  std::vector<uint32_t> knower_masks;
  long total_bits = 0;
};

// Draws coefficients and verifies that every decoder can recover every
// member from the rows plus the members it already knows; redraws up to
// `retries` times before throwing RankDeficientError.
StairBlock stair_encode(const gf::Field& f, std::span<const Bytes> members,
                        std::span<const long> member_bits,
                        std::span<const uint32_t> knower_masks,
                        std::span<const int> decoders, Rng& rng,
                        int retries = 8);

// Solves for all members given the coded rows and the decoder's known
// members (std::nullopt for unknown ones).
std::vector<Bytes> stair_decode(const gf::Field& f, const gf::Matrix& coeffs,
                                std::span<const Bytes> rows,
                                std::span<const long> member_bits,
                                const std::vector<std::optional<Bytes>>& known);

// ---- centralized delivery ------------------------------------------------

struct Step1Code {
  std::vector<GroupSpec> groups;
  std::vector<StairBlock> codes;               // aligned with groups
  std::vector<std::pair<size_t, size_t>> units; // unit -> (group, row)
  std::vector<uint32_t> unit_knowers;          // J of the owning group
  std::vector<long> unit_bits;
  long total_bits = 0;
};

struct TwoStepMessage {
  Step1Code step1;   // metadata + locally reconstructible symbols
  StairBlock step2;  // the transmitted combinations
  long bits = 0;
};

struct MnsMessage {
  std::vector<uint32_t> subsets;  // S, |S| = t+1
  std::vector<Bytes> payloads;    // XOR of F_{d_k, S\{k}} over k in S
  std::vector<long> payload_bits;
  long bits = 0;
};

struct LevelMessage {
  int level = 0;
  bool two_step = false;
  TwoStepMessage ts;
  MnsMessage mns;
  long bits = 0;
};

enum class Scheme { kProposed, kMns };

struct BroadcastMessage {
  Mode mode = Mode::kCentralized;
  Scheme scheme = Scheme::kProposed;
  uint64_t seed = 0;
  long transmitted_bits = 0;
  TwoStepMessage central;            // centralized proposed
  MnsMessage central_mns;            // centralized baseline
  std::vector<LevelMessage> levels;  // decentralized
};

// Partitions the demanded files' subfiles into groups. Groups whose
// leftover set has size t - |G_i| need no transmission (coded_rows = 0).
std::vector<GroupSpec> build_groups(const ProblemInstance& inst,
                                    const CentralizedPlacement& placement,
                                    const DemandVector& demands);

Step1Code encode_step1(const ProblemInstance& inst,
                       const CentralizedPlacement& placement,
                       const DemandVector& demands,
                       const std::vector<GroupSpec>& groups, Rng& rng);

BroadcastMessage encode_step2(const ProblemInstance& inst,
                              const CentralizedPlacement& placement,
                              const DemandVector& demands, uint64_t seed);

BroadcastMessage mns_deliver(const ProblemInstance& inst,
                             const CentralizedPlacement& placement,
                             const DemandVector& demands);

// Recovers user j's demanded file, bit exact. Works for both centralized
// schemes.
Bytes decode(int user, const BroadcastMessage& msg,
             const CentralizedPlacement& placement, const DemandVector& demands);

// ---- decentralized delivery ----------------------------------------------

BroadcastMessage deliver_decentralized(const ProblemInstance& inst,
                                       const DecentralizedPlacement& placement,
                                       const DemandVector& demands,
                                       uint64_t seed);

Bytes decode_decentralized(int user, const BroadcastMessage& msg,
                           const DecentralizedPlacement& placement,
                           const DemandVector& demands);

// Optional transcript: ordered (source, coefficient digest, payload digest)
// lines for replay and debugging.
std::string transmission_transcript(const BroadcastMessage& msg);

}  // namespace ccsim
