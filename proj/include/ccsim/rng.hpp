#pragma once

#include <cstdint>

#include "ccsim/gf.hpp"

namespace ccsim {

// Deterministic, splittable generator (splitmix64 core). Every simulation
// derives all of its randomness from one root seed; split() produces an
// independent stream for a labelled sub-task so that transcripts are
// reproducible regardless of evaluation order.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  Rng split(uint64_t stream) const {
    Rng child(0);
    child.state_ = state_ ^ (0x6a09e667f3bcc909ull + stream * 0xd1342543de82ef95ull);
    child.next();
    return child;
  }

  // Uniform in [0, n), n > 0. Rejection sampling keeps it unbiased.
  uint64_t below(uint64_t n) {
    const uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= lim);
    return v % n;
  }

  uint16_t coefficient(const gf::Field& f) {
    return static_cast<uint16_t>(below(f.order()));
  }

  uint16_t nonzero_coefficient(const gf::Field& f) {
    return static_cast<uint16_t>(1 + below(f.order() - 1));
  }

  uint8_t byte() { return static_cast<uint8_t>(next() & 0xff); }

 private:
  uint64_t state_;
};

}  // namespace ccsim
