// Compares the serial and OpenMP coding kernels on identical inputs and
// verifies that their outputs stay bit-identical.
#include <chrono>
#include <cstdio>
#include <vector>

#include "ccsim/gf.hpp"
#include "ccsim/rng.hpp"

using namespace ccsim;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void bench_mul_add(const gf::Field& f, size_t len, int reps) {
  Rng rng(1);
  std::vector<uint8_t> src(len), d1(len), d2(len);
  for (auto& x : src) x = rng.byte();
  for (size_t i = 0; i < len; ++i) d1[i] = d2[i] = rng.byte();
  const uint16_t c = rng.nonzero_coefficient(f);

  auto t0 = Clock::now();
  for (int r = 0; r < reps; ++r) gf::mul_add_serial(f, d1, src, c);
  const double serial = seconds_since(t0);

  t0 = Clock::now();
  for (int r = 0; r < reps; ++r) gf::mul_add(f, d2, src, c);
  const double parallel = seconds_since(t0);

  const double mb = static_cast<double>(len) * reps / 1e6;
  std::printf("mul_add  w=%-2u len=%-9zu serial %7.1f MB/s  parallel %7.1f MB/s  %s\n",
              f.word_bits(), len, mb / serial, mb / parallel,
              d1 == d2 ? "match" : "MISMATCH");
}

void bench_encode(const gf::Field& f, size_t members, size_t len, size_t rows,
                  int reps) {
  Rng rng(2);
  std::vector<std::vector<uint8_t>> blocks(members);
  for (auto& b : blocks) {
    b.resize(len);
    for (auto& x : b) x = rng.byte();
  }
  gf::Matrix coeffs(rows, members);
  for (size_t r = 0; r < rows; ++r)
    for (size_t m = 0; m < members; ++m) coeffs.at(r, m) = rng.coefficient(f);
  std::vector<size_t> row_len(rows, len);

  auto t0 = Clock::now();
  std::vector<std::vector<uint8_t>> out_s;
  for (int r = 0; r < reps; ++r)
    out_s = gf::encode_blocks_serial(f, coeffs, blocks, row_len);
  const double serial = seconds_since(t0);

  t0 = Clock::now();
  std::vector<std::vector<uint8_t>> out_p;
  for (int r = 0; r < reps; ++r)
    out_p = gf::encode_blocks(f, coeffs, blocks, row_len);
  const double parallel = seconds_since(t0);

  const double mb = static_cast<double>(members) * len * rows * reps / 1e6;
  std::printf("encode   w=%-2u %zux%zu blocks of %-8zu serial %7.1f MB/s  parallel %7.1f MB/s  %s\n",
              f.word_bits(), rows, members, len, mb / serial, mb / parallel,
              out_s == out_p ? "match" : "MISMATCH");
}

}  // namespace

int main() {
  for (const gf::Field* f : {&gf::Field::gf8(), &gf::Field::gf16()}) {
    bench_mul_add(*f, 1 << 12, 20000);
    bench_mul_add(*f, 1 << 20, 200);
    bench_mul_add(*f, 1 << 24, 12);
    bench_encode(*f, 12, 1 << 16, 9, 40);
    bench_encode(*f, 64, 1 << 18, 24, 2);
  }
  return 0;
}
