#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vmlab {

/// Bit-packed vector over GF(2). Trailing padding bits are kept zero.
class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

  static F2Vector from_bits(const std::vector<int>& bits);

  std::size_t size() const { return len_; }
  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool b) {
    const std::uint64_t m = std::uint64_t(1) << (i & 63);
    if (b)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

  void xor_with(const F2Vector& other);
  /// Parity of the AND with `other` (the GF(2) inner product).
  bool dot(const F2Vector& other) const;
  std::size_t popcount() const;
  bool is_zero() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool operator==(const F2Vector& other) const = default;

  std::string to_string() const;  // "0110..."

  static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }

 private:
  std::size_t len_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense bit-packed matrix over GF(2), row-major.
///
/// Rows are stored contiguously at a fixed word stride so that the
/// elimination-heavy callers reduce to whole-row XORs.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows),
        cols_(cols),
        stride_(F2Vector::word_count(cols)),
        words_(rows * stride_, 0) {}

  static F2Matrix identity(std::size_t n);
  /// Rows given as strings of '0'/'1', e.g. {"01", "10"}.
  static F2Matrix parse(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t i, std::size_t j) const {
    return (words_[i * stride_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(std::size_t i, std::size_t j, bool b) {
    const std::uint64_t m = std::uint64_t(1) << (j & 63);
    if (b)
      words_[i * stride_ + (j >> 6)] |= m;
    else
      words_[i * stride_ + (j >> 6)] &= ~m;
  }
  void flip(std::size_t i, std::size_t j) {
    words_[i * stride_ + (j >> 6)] ^= std::uint64_t(1) << (j & 63);
  }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return {words_.data() + i * stride_, stride_};
  }
  std::span<std::uint64_t> row_words(std::size_t i) {
    return {words_.data() + i * stride_, stride_};
  }
  void xor_row(std::size_t dst, std::size_t src);
  void xor_row_with(std::size_t dst, const F2Vector& v);
  void swap_rows(std::size_t a, std::size_t b);

  F2Vector row(std::size_t i) const;
  F2Vector column(std::size_t j) const;
  void set_row(std::size_t i, const F2Vector& v);
  void set_column(std::size_t j, const F2Vector& v);

  bool operator==(const F2Matrix& other) const;
  bool is_zero() const;
  bool is_symmetric() const;
  bool is_identity() const;
  bool is_unit_upper_triangular() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// GF(2) row rank. The input is left unchanged.
std::size_t rank(const F2Matrix& m);

F2Matrix transpose(const F2Matrix& m);

/// Inverse over GF(2), or nullopt when the matrix is singular.
/// Throws std::invalid_argument for a non-square input.
std::optional<F2Matrix> invert(const F2Matrix& m);

/// Schoolbook word-packed product; throws on a dimension mismatch.
F2Matrix multiply(const F2Matrix& a, const F2Matrix& b);

F2Vector multiply(const F2Matrix& a, const F2Vector& x);

F2Matrix add(const F2Matrix& a, const F2Matrix& b);

/// Kronecker product. Entry ((i,i'),(j,j')) = a(i,j) * b(i',j'), with the
/// pair indices flattened row-major: row = i*b.rows()+i', col = j*b.cols()+j'.
F2Matrix tensor(const F2Matrix& a, const F2Matrix& b);

/// Copy of a square matrix with its diagonal zeroed.
F2Matrix off_diag(const F2Matrix& m);

/// Finds a unit-upper-triangular Q with x * Q = z, or nullopt when no such
/// Q exists. Columns are solved left to right; in underdetermined systems
/// the free coefficients are set to 0, so the result is deterministic.
std::optional<F2Matrix> solve_unit_upper_triangular(const F2Matrix& x,
                                                    const F2Matrix& z);

}  // namespace vmlab
