#include "ccsim/model.hpp"

#include <json.hpp>

#include "ccsim/combinatorics.hpp"
#include "ccsim/errors.hpp"

namespace ccsim {

std::optional<int> ProblemInstance::cache_level() const {
  const Rational t = cache_size * num_users / num_files;
  if (den(t) != 1) return std::nullopt;
  return num(t).convert_to<int>();
}

ProblemInstance make_instance(int num_files, int num_users, Rational cache_size,
                              long file_bits, uint64_t seed, Mode mode) {
  if (num_files < 1 || num_users <= num_files)
    throw InvalidRegimeError("need 1 <= N < K");
  if (cache_size < 0 || cache_size > num_files)
    throw MemoryOutOfRangeError("need 0 <= M <= N");
  if (file_bits < 1) throw InvalidRegimeError("need F >= 1");
  ProblemInstance inst{num_files, num_users, std::move(cache_size),
                       file_bits, seed, mode};
  if (mode == Mode::kCentralized) {
    const auto t = inst.cache_level();
    if (!t)
      throw GranularityMismatchError("centralized instance needs integral t = KM/N");
    const uint64_t parts = binom_u64(num_users, *t);
    if (static_cast<uint64_t>(file_bits) % parts != 0)
      throw GranularityMismatchError("F must be divisible by C(K,t)");
  }
  return inst;
}

bool DemandVector::surjective(int num_files) const {
  std::vector<bool> seen(num_files, false);
  for (int file : d) seen[file] = true;
  for (bool s : seen)
    if (!s) return false;
  return true;
}

DemandVector worst_case_demand(const ProblemInstance& inst) {
  const int n = inst.num_files, k = inst.num_users;
  DemandVector dv;
  dv.d.reserve(k);
  for (int i = 0; i < n; ++i) {
    const int count = k / n + (i < k % n ? 1 : 0);
    dv.d.insert(dv.d.end(), count, i);
  }
  return dv;
}

std::vector<std::vector<int>> demand_groups(const DemandVector& d, int num_files) {
  std::vector<std::vector<int>> groups(num_files);
  for (size_t j = 0; j < d.d.size(); ++j) groups[d.d[j]].push_back(static_cast<int>(j));
  return groups;
}

std::vector<uint32_t> demand_group_masks(const DemandVector& d, int num_files) {
  std::vector<uint32_t> masks(num_files, 0);
  for (size_t j = 0; j < d.d.size(); ++j) masks[d.d[j]] |= 1u << j;
  return masks;
}

nlohmann::json instance_to_json(const ProblemInstance& inst) {
  return {{"N", inst.num_files},
          {"K", inst.num_users},
          {"M", rational_string(inst.cache_size)},
          {"F", inst.file_bits},
          {"seed", inst.seed},
          {"mode", inst.mode == Mode::kCentralized ? "centralized" : "decentralized"}};
}

ProblemInstance instance_from_json(const nlohmann::json& j) {
  const std::string mode = j.value("mode", "centralized");
  if (mode != "centralized" && mode != "decentralized")
    throw InvalidRegimeError("mode must be centralized or decentralized");
  return make_instance(j.at("N").get<int>(), j.at("K").get<int>(),
                       parse_rational(j.at("M").is_string()
                                          ? j.at("M").get<std::string>()
                                          : j.at("M").dump()),
                       j.at("F").get<long>(), j.value("seed", uint64_t{1}),
                       mode == "centralized" ? Mode::kCentralized
                                             : Mode::kDecentralized);
}

}  // namespace ccsim
