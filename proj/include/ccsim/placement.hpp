#pragma once

#include <map>
#include <vector>

#include "ccsim/bytes.hpp"
#include "ccsim/model.hpp"

namespace ccsim {

// Combinatorial placement: every file split into C(K,t) equal subfiles
// F_{i,W}, |W| = t; user j caches F_{i,W} iff j is in W.
struct CentralizedPlacement {
  int cache_level = 0;           // t
  long subfile_bits = 0;         // F / C(K,t)
  std::vector<uint32_t> subsets; // knower mask per colex rank
  // subfiles[file][rank]: packed payload, pseudo-random from the seed.
  std::vector<std::vector<Bytes>> subfiles;

  bool user_caches(int user, uint64_t rank) const {
    return (subsets[rank] >> user) & 1;
  }
  // Whole-file payload, subfiles concatenated in colex order.
  Bytes file_payload(int file, long file_bits) const;
};

CentralizedPlacement place_centralized(const ProblemInstance& inst);

// Random placement: each user independently caches round(MF/N) uniformly
// chosen bit positions of every file. Bits are then grouped by their exact
// knower set; only nonempty classes are stored.
struct DecentralizedPlacement {
  long cached_bits_per_file = 0;   // round(qF)
  std::vector<Bytes> files;        // [file]: packed F bits
  // classes[file]: knower mask -> sorted bit positions.
  std::vector<std::map<uint32_t, std::vector<uint32_t>>> classes;

  long class_bits(int file, uint32_t mask) const;
  Bytes class_payload(int file, uint32_t mask) const;
};

DecentralizedPlacement place_decentralized(const ProblemInstance& inst, uint64_t seed);

// Diagnostic transcript: one line per (user, file, knower class, bits).
std::string placement_transcript(const ProblemInstance& inst,
                                 const DecentralizedPlacement& p);
std::string placement_transcript(const ProblemInstance& inst,
                                 const CentralizedPlacement& p);

}  // namespace ccsim
