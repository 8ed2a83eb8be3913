#include "ccsim/gf.hpp"

#include <cassert>
#include <stdexcept>

namespace ccsim::gf {

Field::Field(unsigned word_bits) : w_(word_bits) {
  if (w_ != 8 && w_ != 16) throw std::invalid_argument("field word size must be 8 or 16");
  order_ = 1u << w_;
  poly_ = (w_ == 8) ? 0x11du : 0x1100bu;
  const uint32_t max = order_ - 1;
  exp_.assign(2 * max, 0);
  log_.assign(order_, 0);
  uint32_t x = 1;
  for (uint32_t i = 0; i < max; ++i) {
    exp_[i] = static_cast<uint16_t>(x);
    exp_[i + max] = static_cast<uint16_t>(x);
    log_[x] = i;
    x <<= 1;
    if (x & order_) x ^= poly_;
  }
  assert(x == 1 && "polynomial must be primitive");
}

const Field& Field::gf8() {
  static const Field f(8);
  return f;
}

const Field& Field::gf16() {
  static const Field f(16);
  return f;
}

uint16_t Field::inv(uint16_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  const uint32_t max = order_ - 1;
  return exp_[max - log_[a]];
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Matrix Matrix::select_columns(std::span<const size_t> cols) const {
  Matrix s(rows_, cols.size());
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols.size(); ++c) s.at(r, c) = at(r, cols[c]);
  return s;
}

size_t rank(const Field& f, Matrix m) {
  const size_t rows = m.rows(), cols = m.cols();
  size_t rk = 0;
  for (size_t col = 0; col < cols && rk < rows; ++col) {
    size_t piv = rk;
    while (piv < rows && m.at(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rk)
      for (size_t c = col; c < cols; ++c) std::swap(m.at(piv, c), m.at(rk, c));
    const uint16_t pinv = f.inv(m.at(rk, col));
    for (size_t r = rk + 1; r < rows; ++r) {
      const uint16_t factor = f.mul(m.at(r, col), pinv);
      if (factor == 0) continue;
      for (size_t c = col; c < cols; ++c)
        m.at(r, c) ^= f.mul(factor, m.at(rk, c));
    }
    ++rk;
  }
  return rk;
}

bool full_column_rank(const Field& f, const Matrix& m) {
  return m.cols() == 0 || rank(f, m) == m.cols();
}

std::optional<std::vector<uint16_t>> solve(const Field& f, Matrix a,
                                           std::vector<uint16_t> b) {
  const size_t rows = a.rows(), cols = a.cols();
  if (b.size() != rows || rows < cols) return std::nullopt;
  size_t rk = 0;
  std::vector<size_t> pivot_row(cols);
  for (size_t col = 0; col < cols; ++col) {
    size_t piv = rk;
    while (piv < rows && a.at(piv, col) == 0) ++piv;
    if (piv == rows) return std::nullopt;  // rank deficient
    if (piv != rk) {
      for (size_t c = col; c < cols; ++c) std::swap(a.at(piv, c), a.at(rk, c));
      std::swap(b[piv], b[rk]);
    }
    const uint16_t pinv = f.inv(a.at(rk, col));
    for (size_t r = 0; r < rows; ++r) {
      if (r == rk) continue;
      const uint16_t factor = f.mul(a.at(r, col), pinv);
      if (factor == 0) continue;
      for (size_t c = col; c < cols; ++c)
        a.at(r, c) ^= f.mul(factor, a.at(rk, c));
      b[r] ^= f.mul(factor, b[rk]);
    }
    b[rk] = f.mul(b[rk], pinv);
    for (size_t c = col; c < cols; ++c) a.at(rk, c) = f.mul(a.at(rk, c), pinv);
    pivot_row[col] = rk;
    ++rk;
  }
  std::vector<uint16_t> x(cols);
  for (size_t c = 0; c < cols; ++c) x[c] = b[pivot_row[c]];
  return x;
}

namespace {

inline void mul_add_bytes(const Field& f, uint8_t* dst, const uint8_t* src,
                          size_t n, uint16_t c) {
  if (c == 0) return;
  if (c == 1) {
    for (size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    return;
  }
  if (f.word_bits() == 8) {
    for (size_t i = 0; i < n; ++i)
      dst[i] ^= static_cast<uint8_t>(f.mul(src[i], c));
  } else {
    // 16-bit symbols, little endian; odd tail byte treated as a low byte.
    size_t i = 0;
    for (; i + 1 < n; i += 2) {
      const uint16_t s = static_cast<uint16_t>(src[i] | (src[i + 1] << 8));
      const uint16_t p = f.mul(s, c);
      dst[i] ^= static_cast<uint8_t>(p);
      dst[i + 1] ^= static_cast<uint8_t>(p >> 8);
    }
    if (i < n) dst[i] ^= static_cast<uint8_t>(f.mul(src[i], c));
  }
}

}  // namespace

void mul_add_serial(const Field& f, std::span<uint8_t> dst,
                    std::span<const uint8_t> src, uint16_t c) {
  mul_add_bytes(f, dst.data(), src.data(), std::min(dst.size(), src.size()), c);
}

void mul_add(const Field& f, std::span<uint8_t> dst,
             std::span<const uint8_t> src, uint16_t c) {
  const size_t n = std::min(dst.size(), src.size());
  if (n < (1u << 15)) {
    mul_add_bytes(f, dst.data(), src.data(), n, c);
    return;
  }
  const size_t step = (f.word_bits() == 16) ? 2 : 1;
  const size_t chunk = ((n / 8) / step) * step;
#pragma omp parallel for schedule(static)
  for (long long off = 0; off < static_cast<long long>(n); off += chunk) {
    const size_t len = std::min(chunk, n - static_cast<size_t>(off));
    mul_add_bytes(f, dst.data() + off, src.data() + off, len, c);
  }
}

std::vector<std::vector<uint8_t>> encode_blocks_serial(
    const Field& f, const Matrix& coeffs,
    std::span<const std::vector<uint8_t>> blocks, std::span<const size_t> row_len) {
  std::vector<std::vector<uint8_t>> out(coeffs.rows());
  for (size_t r = 0; r < coeffs.rows(); ++r) {
    out[r].assign(row_len[r], 0);
    for (size_t m = 0; m < coeffs.cols(); ++m)
      mul_add_serial(f, out[r], blocks[m], coeffs.at(r, m));
  }
  return out;
}

std::vector<std::vector<uint8_t>> encode_blocks(
    const Field& f, const Matrix& coeffs,
    std::span<const std::vector<uint8_t>> blocks, std::span<const size_t> row_len) {
  std::vector<std::vector<uint8_t>> out(coeffs.rows());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long r = 0; r < static_cast<long long>(coeffs.rows()); ++r) {
    out[r].assign(row_len[r], 0);
    for (size_t m = 0; m < coeffs.cols(); ++m)
      mul_add_serial(f, out[r], blocks[m], coeffs.at(r, m));
  }
  return out;
}

}  // namespace ccsim::gf
