#include "ccsim/placement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ccsim/combinatorics.hpp"
#include "ccsim/errors.hpp"

namespace ccsim {

Bytes CentralizedPlacement::file_payload(int file, long file_bits) const {
  Bytes out(packed_size(file_bits), 0);
  long pos = 0;
  for (const Bytes& sf : subfiles[file]) {
    for (long b = 0; b < subfile_bits; ++b, ++pos)
      bit_set(out, pos, bit_get(sf, b));
  }
  return out;
}

CentralizedPlacement place_centralized(const ProblemInstance& inst) {
  const auto t_opt = inst.cache_level();
  if (!t_opt) throw GranularityMismatchError("t = KM/N must be integral");
  const int t = *t_opt;
  const uint64_t parts = binom_u64(inst.num_users, t);
  if (static_cast<uint64_t>(inst.file_bits) % parts != 0)
    throw GranularityMismatchError("F must be divisible by C(K,t)");

  CentralizedPlacement p;
  p.cache_level = t;
  p.subfile_bits = inst.file_bits / static_cast<long>(parts);
  p.subsets = masks_of_size(inst.num_users, t);
  Rng root(inst.seed);
  p.subfiles.resize(inst.num_files);
  for (int i = 0; i < inst.num_files; ++i) {
    Rng frng = root.split(static_cast<uint64_t>(i));
    p.subfiles[i].reserve(parts);
    for (uint64_t r = 0; r < parts; ++r) {
      Rng srng = frng.split(r);
      p.subfiles[i].push_back(random_bits(srng, p.subfile_bits));
    }
  }
  return p;
}

long DecentralizedPlacement::class_bits(int file, uint32_t mask) const {
  const auto it = classes[file].find(mask);
  return it == classes[file].end() ? 0 : static_cast<long>(it->second.size());
}

Bytes DecentralizedPlacement::class_payload(int file, uint32_t mask) const {
  const auto it = classes[file].find(mask);
  if (it == classes[file].end()) return {};
  const auto& positions = it->second;
  Bytes out(packed_size(static_cast<long>(positions.size())), 0);
  for (size_t b = 0; b < positions.size(); ++b)
    bit_set(out, static_cast<long>(b), bit_get(files[file], positions[b]));
  return out;
}

DecentralizedPlacement place_decentralized(const ProblemInstance& inst, uint64_t seed) {
  if (inst.num_users > 20)
    throw InvalidRegimeError("decentralized bit-level simulation capped at K <= 20");
  const long f_bits = inst.file_bits;
  const double q = to_double(inst.cache_size) / inst.num_files;
  DecentralizedPlacement p;
  p.cached_bits_per_file = std::lround(q * static_cast<double>(f_bits));

  Rng root(seed);
  p.files.resize(inst.num_files);
  p.classes.resize(inst.num_files);
  std::vector<uint32_t> mask_of(f_bits);
  std::vector<uint32_t> positions(f_bits);
  for (int i = 0; i < inst.num_files; ++i) {
    Rng frng = root.split(static_cast<uint64_t>(i));
    p.files[i] = random_bits(frng, f_bits);
    std::fill(mask_of.begin(), mask_of.end(), 0u);
    for (int j = 0; j < inst.num_users; ++j) {
      // Fixed-size sample: exactly round(qF) positions per (file, user),
      // so the cache constraint holds for every realization.
      Rng urng = frng.split(1000 + static_cast<uint64_t>(j));
      std::iota(positions.begin(), positions.end(), 0u);
      for (long s = 0; s < p.cached_bits_per_file; ++s) {
        const long pick = s + static_cast<long>(urng.below(f_bits - s));
        std::swap(positions[s], positions[pick]);
        mask_of[positions[s]] |= 1u << j;
      }
    }
    auto& by_class = p.classes[i];
    for (long pos = 0; pos < f_bits; ++pos)
      by_class[mask_of[pos]].push_back(static_cast<uint32_t>(pos));
  }
  return p;
}

std::string placement_transcript(const ProblemInstance& inst,
                                 const CentralizedPlacement& p) {
  std::ostringstream out;
  for (int j = 0; j < inst.num_users; ++j)
    for (int i = 0; i < inst.num_files; ++i)
      for (size_t r = 0; r < p.subsets.size(); ++r)
        if (p.user_caches(j, r))
          out << "user " << j + 1 << " file " << i + 1 << " subset 0x" << std::hex
              << p.subsets[r] << std::dec << " bits " << p.subfile_bits << '\n';
  return out.str();
}

std::string placement_transcript(const ProblemInstance& inst,
                                 const DecentralizedPlacement& p) {
  std::ostringstream out;
  for (int j = 0; j < inst.num_users; ++j)
    for (int i = 0; i < inst.num_files; ++i)
      for (const auto& [mask, positions] : p.classes[i])
        if ((mask >> j) & 1)
          out << "user " << j + 1 << " file " << i + 1 << " class 0x" << std::hex
              << mask << std::dec << " bits " << positions.size() << '\n';
  return out.str();
}

}  // namespace ccsim
