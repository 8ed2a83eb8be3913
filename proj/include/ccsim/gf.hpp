#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ccsim::gf {

// GF(2^w) with log/antilog tables, w in {8, 16}.
// Default polynomial for w=8 is x^8+x^4+x^3+x^2+1 (0x11d); for w=16 it is
// x^16+x^12+x^3+x+1 (0x1100b). Both are primitive with generator x.
class Field {
 public:
  explicit Field(unsigned word_bits);

  static const Field& gf8();
  static const Field& gf16();

  unsigned word_bits() const { return w_; }
  uint32_t order() const { return order_; }
  uint32_t polynomial() const { return poly_; }

  uint16_t add(uint16_t a, uint16_t b) const { return a ^ b; }
  uint16_t sub(uint16_t a, uint16_t b) const { return a ^ b; }

  uint16_t mul(uint16_t a, uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  uint16_t inv(uint16_t a) const;
  uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

 private:
  unsigned w_;
  uint32_t order_;
  uint32_t poly_;
  std::vector<uint16_t> exp_;  // doubled range, avoids the mod in mul
  std::vector<uint32_t> log_;
};

// Dense matrix over a configured field. Entries are field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  uint16_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  uint16_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  std::span<uint16_t> row(size_t r) { return {a_.data() + r * cols_, cols_}; }
  std::span<const uint16_t> row(size_t r) const { return {a_.data() + r * cols_, cols_}; }

  Matrix transposed() const;

  // Keeps the listed columns, in the given order.
  Matrix select_columns(std::span<const size_t> cols) const;

  bool operator==(const Matrix&) const = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<uint16_t> a_;
};

size_t rank(const Field& f, Matrix m);

bool full_column_rank(const Field& f, const Matrix& m);

// Solves a*x = b for square-or-tall a with full column rank.
// Returns nullopt when the rank condition fails (caller retries a new draw).
std::optional<std::vector<uint16_t>> solve(const Field& f, Matrix a,
                                           std::vector<uint16_t> b);

// ---- byte-stream kernels -------------------------------------------------
//
// Coded payloads are byte streams with one field coefficient per stream:
// dst ^= c * src applied symbol-wise. For w=16 the streams are processed as
// little-endian 16-bit words (buffers must have even length).

void mul_add_serial(const Field& f, std::span<uint8_t> dst,
                    std::span<const uint8_t> src, uint16_t c);

// OpenMP variant; bit-identical to mul_add_serial.
void mul_add(const Field& f, std::span<uint8_t> dst,
             std::span<const uint8_t> src, uint16_t c);

// out[r] = sum_m coeffs(r,m) * blocks[m], truncated to row_len bytes.
// Source blocks shorter than row_len contribute zeros past their end.
std::vector<std::vector<uint8_t>> encode_blocks_serial(
    const Field& f, const Matrix& coeffs,
    std::span<const std::vector<uint8_t>> blocks, std::span<const size_t> row_len);

std::vector<std::vector<uint8_t>> encode_blocks(
    const Field& f, const Matrix& coeffs,
    std::span<const std::vector<uint8_t>> blocks, std::span<const size_t> row_len);

}  // namespace ccsim::gf
