#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccsim/rational.hpp"

namespace ccsim {

enum class Mode { kCentralized, kDecentralized };

// A caching problem: N files, K users (N < K), per-user cache of M file
// units, files of F bits each.
struct ProblemInstance {
  int num_files = 0;   // N
  int num_users = 0;   // K
  Rational cache_size; // M, in file units
  long file_bits = 0;  // F
  uint64_t seed = 1;
  Mode mode = Mode::kCentralized;

  // t = K*M/N when integral.
  std::optional<int> cache_level() const;
};

// Validates the regime and, for centralized instances, the subfile
// granularity (F divisible by C(K,t)).
ProblemInstance make_instance(int num_files, int num_users, Rational cache_size,
                              long file_bits, uint64_t seed = 1,
                              Mode mode = Mode::kCentralized);

struct DemandVector {
  std::vector<int> d;  // d[j] in [0:N), one per user

  bool surjective(int num_files) const;
};

// Canonical worst-case demand: file i is assigned a consecutive run of
// floor(K/N) users, +1 for the first K mod N files. Every file is demanded.
DemandVector worst_case_demand(const ProblemInstance& inst);

// Per file, the set of users demanding it (may be empty for non-surjective
// demands). The groups partition [0:K).
std::vector<std::vector<int>> demand_groups(const DemandVector& d, int num_files);

std::vector<uint32_t> demand_group_masks(const DemandVector& d, int num_files);

// JSON instance descriptor:
// {"N":..,"K":..,"M":"num/den","F":..,"seed":..,"mode":"centralized"}.
nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

}  // namespace ccsim
