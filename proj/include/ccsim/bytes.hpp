#pragma once

#include <cstdint>
#include <vector>

#include "ccsim/rng.hpp"

namespace ccsim {

// Bit-packed payload buffer. Bit i lives in byte i/8, LSB first.
using Bytes = std::vector<uint8_t>;

inline size_t packed_size(long bits) { return static_cast<size_t>((bits + 7) / 8); }

inline bool bit_get(const Bytes& b, long i) {
  return (b[static_cast<size_t>(i >> 3)] >> (i & 7)) & 1;
}

inline void bit_set(Bytes& b, long i, bool v) {
  const size_t byte = static_cast<size_t>(i >> 3);
  const uint8_t mask = static_cast<uint8_t>(1u << (i & 7));
  if (v)
    b[byte] |= mask;
  else
    b[byte] &= static_cast<uint8_t>(~mask);
}

// Zeroes the padding bits past `bits` in the last byte.
inline void mask_tail(Bytes& b, long bits) {
  if (bits & 7) b[static_cast<size_t>(bits >> 3)] &= static_cast<uint8_t>((1u << (bits & 7)) - 1);
}

inline Bytes random_bits(Rng& rng, long bits) {
  Bytes b(packed_size(bits));
  for (auto& x : b) x = rng.byte();
  mask_tail(b, bits);
  return b;
}

inline bool equal_bits(const Bytes& a, const Bytes& b, long bits) {
  for (long i = 0; i < bits; ++i)
    if (bit_get(a, i) != bit_get(b, i)) return false;
  return true;
}

// FNV-1a, used for transcript digests only.
inline uint64_t digest(const Bytes& b) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint8_t x : b) h = (h ^ x) * 0x100000001b3ull;
  return h;
}

}  // namespace ccsim
