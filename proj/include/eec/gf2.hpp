#pragma once

// Bit-packed GF(2) vectors, matrices and affine solution spaces.
//
// Layout: 64 coordinates per std::uint64_t word, coordinate i lives in word
// i / 64 at bit i % 64 (little-endian within a word). Bits past size() in the
// last word are always zero.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eec {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : size_(length), words_(word_count(length), 0) {}

  /// Parses a string over {'0','1'}; throws std::invalid_argument otherwise.
  static BitVector from_string(std::string_view bits);
  /// Vector of `length` coordinates whose low bits are taken from `mask`.
  static BitVector from_mask(std::uint64_t mask, std::size_t length);
  static BitVector unit(std::size_t length, std::size_t index);
  static BitVector ones(std::size_t length);

  static constexpr std::size_t word_count(std::size_t length) { return (length + 63) / 64; }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t bit = 1ULL << (i & 63);
    if (value)
      words_[i >> 6] |= bit;
    else
      words_[i >> 6] &= ~bit;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }
  void clear();

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  /// Inner product over GF(2).
  bool dot(const BitVector& other) const;
  std::size_t popcount() const;
  bool none() const;
  bool any() const { return !none(); }

  /// Smallest set index >= from, or size() when there is none.
  std::size_t find_next(std::size_t from) const;
  std::size_t find_first() const { return find_next(0); }

  /// Low 64 coordinates as a mask (requires size() <= 64).
  std::uint64_t to_mask() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  /// Coordinates as '0'/'1' characters, index 0 first.
  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  /// Lexicographic by coordinate index (coordinate 0 most significant),
  /// shorter vectors first.
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

  static BitMatrix identity(std::size_t n);
  /// All rows must share one length; `cols` is used when `rows` is empty.
  static BitMatrix from_rows(std::vector<BitVector> rows, std::size_t cols = 0);
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static BitMatrix from_columns(const std::vector<BitVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { data_[r].set(c, value); }

  const BitVector& row(std::size_t r) const { return data_[r]; }
  BitVector& row(std::size_t r) { return data_[r]; }
  const std::vector<BitVector>& row_vectors() const { return data_; }

  void append_row(BitVector row);
  BitVector column(std::size_t c) const;
  std::vector<BitVector> columns() const;
  BitMatrix transposed() const;
  /// Rows [first, first + count).
  BitMatrix row_block(std::size_t first, std::size_t count) const;

  /// M x.
  BitVector operator*(const BitVector& x) const;
  /// x^T M (row vector times matrix).
  BitVector left_multiply(const BitVector& x) const;
  BitMatrix operator*(const BitMatrix& other) const;

  bool is_zero() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

struct RrefResult {
  BitMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
};

/// Reduced row-echelon form. Nonzero rows come first in pivot order.
RrefResult rref(const BitMatrix& m);

std::size_t rank(const BitMatrix& m);

/// Basis of Ker(M) as columns (M.cols() x k).
BitMatrix kernel_basis(const BitMatrix& m);

/// Set {basis * x + offset : x in F2^k}. The empty set is a distinct value.
class AffineSpace {
 public:
  AffineSpace() = default;

  static AffineSpace empty_set(std::size_t ambient);
  static AffineSpace point(BitVector p);
  static AffineSpace whole(std::size_t ambient);

  /// Throws std::invalid_argument when the basis columns are dependent or the
  /// shapes disagree.
  AffineSpace(BitVector offset, BitMatrix basis);

  std::size_t ambient() const { return ambient_; }
  bool is_empty() const { return empty_; }
  /// Dimension k; meaningless (0) for the empty set.
  std::size_t dimension() const { return basis_.cols(); }

  const BitVector& offset() const { return offset_; }
  /// ambient x k, columns are basis vectors.
  const BitMatrix& basis() const { return basis_; }

  bool contains(const BitVector& x) const;
  /// Whether x lies in the linear span of the basis columns.
  bool direction_contains(const BitVector& x) const;

  /// offset + sum of basis columns selected by the low bits of `coeffs`.
  BitVector element(std::uint64_t coeffs) const;
  /// All 2^k elements (k <= max_dimension, else std::length_error).
  std::vector<BitVector> enumerate(std::size_t max_dimension = 24) const;

  /// Same set with a column-reduced echelon basis (pivot = lowest coordinate)
  /// and the lexicographically least element as offset.
  AffineSpace canonical() const;

 private:
  // Row-echelon form of basis^T, built lazily for membership tests.
  const RrefResult& echelon() const;

  std::size_t ambient_ = 0;
  bool empty_ = true;
  BitVector offset_;
  BitMatrix basis_;
  mutable std::optional<RrefResult> echelon_;
};

/// Full solution set of M x = y.
AffineSpace solve_affine(const BitMatrix& m, const BitVector& y);

/// Set equality; requires equal ambient dimension.
bool affine_equal(const AffineSpace& a, const AffineSpace& b);

/// Streaming row-echelon basis over F2^width with a right-hand-side bit per
/// row, for systems too tall to materialize.
class EchelonBasis {
 public:
  enum class Insert { Added, Redundant, Inconsistent };

  explicit EchelonBasis(std::size_t width) : width_(width), pivot_row_(width, -1) {}

  Insert insert(BitVector row, bool rhs);

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  bool inconsistent() const { return inconsistent_; }

  /// Solution set of the inserted system (empty when inconsistent).
  AffineSpace solve() const;

 private:
  std::size_t width_;
  std::vector<BitVector> rows_;
  std::vector<bool> rhs_;
  std::vector<std::ptrdiff_t> pivot_row_;
  bool inconsistent_ = false;
};

}  // namespace eec
