#include "eec/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace eec {

// ---------------------------------------------------------------- BitVector

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string may only contain '0' and '1'");
  }
  return v;
}

BitVector BitVector::from_mask(std::uint64_t mask, std::size_t length) {
  if (length > 64) throw std::invalid_argument("from_mask: length > 64");
  BitVector v(length);
  if (length > 0) v.words_[0] = length == 64 ? mask : (mask & ((1ULL << length) - 1));
  return v;
}

BitVector BitVector::unit(std::size_t length, std::size_t index) {
  BitVector v(length);
  v.set(index);
  return v;
}

BitVector BitVector::ones(std::size_t length) {
  BitVector v(length);
  for (auto& w : v.words_) w = ~0ULL;
  if (length % 64 != 0) v.words_.back() &= (1ULL << (length % 64)) - 1;
  return v;
}

void BitVector::clear() { std::fill(words_.begin(), words_.end(), 0); }

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector xor: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitVector and: length mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) throw std::invalid_argument("BitVector dot: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

std::size_t BitVector::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BitVector::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t BitVector::find_next(std::size_t from) const {
  if (from >= size_) return size_;
  std::size_t wi = from >> 6;
  std::uint64_t w = words_[wi] & (~0ULL << (from & 63));
  while (true) {
    if (w != 0) return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
    if (++wi >= words_.size()) return size_;
    w = words_[wi];
  }
}

std::uint64_t BitVector::to_mask() const {
  if (size_ > 64) throw std::invalid_argument("to_mask: length > 64");
  return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  for (std::size_t i = 0; i < a.words_.size(); ++i) {
    std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (diff == 0) continue;
    std::uint64_t low = diff & (~diff + 1);
    return (a.words_[i] & low) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows, std::size_t cols) {
  BitMatrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? cols : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != m.cols_) throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
  m.data_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVector> vs;
  vs.reserve(rows.size());
  for (const auto& r : rows) vs.push_back(BitVector::from_string(r));
  return from_rows(std::move(vs));
}

BitMatrix BitMatrix::from_columns(const std::vector<BitVector>& columns, std::size_t rows) {
  BitMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("BitMatrix::from_columns: bad column length");
    for (std::size_t r = columns[c].find_first(); r < rows; r = columns[c].find_next(r + 1)) m.set(r, c);
  }
  return m;
}

void BitMatrix::append_row(BitVector row) {
  if (rows_ == 0 && data_.empty() && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("BitMatrix::append_row: length mismatch");
  data_.push_back(std::move(row));
  ++rows_;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r].get(c)) v.set(r);
  return v;
}

std::vector<BitVector> BitMatrix::columns() const {
  std::vector<BitVector> out(cols_, BitVector(rows_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = data_[r].find_first(); c < cols_; c = data_[r].find_next(c + 1)) out[c].set(r);
  return out;
}

BitMatrix BitMatrix::transposed() const { return from_rows(columns(), rows_); }

BitMatrix BitMatrix::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw std::out_of_range("BitMatrix::row_block");
  std::vector<BitVector> rows(data_.begin() + static_cast<std::ptrdiff_t>(first),
                              data_.begin() + static_cast<std::ptrdiff_t>(first + count));
  return from_rows(std::move(rows), cols_);
}

BitVector BitMatrix::operator*(const BitVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("BitMatrix * BitVector: shape mismatch");
  BitVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r].dot(x)) y.set(r);
  return y;
}

BitVector BitMatrix::left_multiply(const BitVector& x) const {
  if (x.size() != rows_) throw std::invalid_argument("BitVector * BitMatrix: shape mismatch");
  BitVector y(cols_);
  for (std::size_t r = x.find_first(); r < rows_; r = x.find_next(r + 1)) y ^= data_[r];
  return y;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("BitMatrix * BitMatrix: shape mismatch");
  BitMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) out.data_[r] = other.left_multiply(data_[r]);
  return out;
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BitVector& r) { return r.none(); });
}

// ---------------------------------------------------------------- elimination

namespace {

// In-place Gauss-Jordan over the first `pivot_limit` columns. On return the
// first rank rows carry the pivots in increasing column order.
std::vector<std::size_t> eliminate(std::vector<BitVector>& rows, std::size_t pivot_limit) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < pivot_limit && rank < rows.size(); ++col) {
    std::size_t pick = rank;
    while (pick < rows.size() && !rows[pick].get(col)) ++pick;
    if (pick == rows.size()) continue;
    std::swap(rows[rank], rows[pick]);
    const auto& prow = rows[rank].words();
    const std::size_t w0 = col >> 6;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || !rows[r].get(col)) continue;
      auto dst = rows[r].words();
      for (std::size_t w = w0; w < dst.size(); ++w) dst[w] ^= prow[w];
    }
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

}  // namespace

RrefResult rref(const BitMatrix& m) {
  std::vector<BitVector> rows = m.row_vectors();
  auto pivots = eliminate(rows, m.cols());
  RrefResult out;
  out.rank = pivots.size();
  out.pivot_columns = std::move(pivots);
  out.reduced = BitMatrix::from_rows(std::move(rows), m.cols());
  return out;
}

std::size_t rank(const BitMatrix& m) { return rref(m).rank; }

AffineSpace solve_affine(const BitMatrix& m, const BitVector& y) {
  if (y.size() != m.rows()) throw std::invalid_argument("solve_affine: rhs length mismatch");
  const std::size_t n = m.cols();
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    BitVector aug(n + 1);
    auto src = m.row(r).words();
    auto dst = aug.words();
    std::copy(src.begin(), src.end(), dst.begin());
    if (y.get(r)) aug.set(n);
    rows.push_back(std::move(aug));
  }
  auto pivots = eliminate(rows, n);
  const std::size_t rank = pivots.size();
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r].get(n)) return AffineSpace::empty_set(n);

  BitVector offset(n);
  for (std::size_t i = 0; i < rank; ++i)
    if (rows[i].get(n)) offset.set(pivots[i]);

  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(n);
    v.set(f);
    for (std::size_t i = 0; i < rank; ++i)
      if (rows[i].get(f)) v.set(pivots[i]);
    basis.push_back(std::move(v));
  }
  return AffineSpace(std::move(offset), BitMatrix::from_columns(basis, n));
}

BitMatrix kernel_basis(const BitMatrix& m) { return solve_affine(m, BitVector(m.rows())).basis(); }

// ---------------------------------------------------------------- AffineSpace

AffineSpace AffineSpace::empty_set(std::size_t ambient) {
  AffineSpace s;
  s.ambient_ = ambient;
  s.empty_ = true;
  s.offset_ = BitVector(ambient);
  s.basis_ = BitMatrix(ambient, 0);
  return s;
}

AffineSpace AffineSpace::point(BitVector p) {
  const std::size_t n = p.size();
  return AffineSpace(std::move(p), BitMatrix(n, 0));
}

AffineSpace AffineSpace::whole(std::size_t ambient) {
  return AffineSpace(BitVector(ambient), BitMatrix::identity(ambient));
}

AffineSpace::AffineSpace(BitVector offset, BitMatrix basis)
    : ambient_(offset.size()), empty_(false), offset_(std::move(offset)), basis_(std::move(basis)) {
  if (basis_.rows() != ambient_) throw std::invalid_argument("AffineSpace: basis rows != ambient");
  if (echelon().rank != basis_.cols()) throw std::invalid_argument("AffineSpace: dependent basis columns");
}

const RrefResult& AffineSpace::echelon() const {
  if (!echelon_) echelon_ = rref(basis_.transposed());
  return *echelon_;
}

bool AffineSpace::direction_contains(const BitVector& x) const {
  if (x.size() != ambient_) throw std::invalid_argument("AffineSpace: ambient mismatch");
  const auto& e = echelon();
  BitVector v = x;
  for (std::size_t i = 0; i < e.rank; ++i)
    if (v.get(e.pivot_columns[i])) v ^= e.reduced.row(i);
  return v.none();
}

bool AffineSpace::contains(const BitVector& x) const {
  if (empty_) return false;
  return direction_contains(x ^ offset_);
}

BitVector AffineSpace::element(std::uint64_t coeffs) const {
  BitVector v = offset_;
  const auto k = dimension();
  for (std::size_t j = 0; j < k && j < 64; ++j)
    if ((coeffs >> j) & 1ULL) v ^= basis_.column(j);
  return v;
}

std::vector<BitVector> AffineSpace::enumerate(std::size_t max_dimension) const {
  if (empty_) return {};
  const auto k = dimension();
  if (k > max_dimension || k >= 63) throw std::length_error("AffineSpace::enumerate: dimension too large");
  const auto cols = basis_.columns();
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << k);
  // Gray-code walk: one xor per element.
  BitVector cur = offset_;
  out.push_back(cur);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
    cur ^= cols[static_cast<std::size_t>(std::countr_zero(i))];
    out.push_back(cur);
  }
  return out;
}

AffineSpace AffineSpace::canonical() const {
  if (empty_) return *this;
  const auto& e = echelon();
  BitVector off = offset_;
  for (std::size_t i = 0; i < e.rank; ++i)
    if (off.get(e.pivot_columns[i])) off ^= e.reduced.row(i);
  std::vector<BitVector> cols(e.reduced.row_vectors().begin(),
                              e.reduced.row_vectors().begin() + static_cast<std::ptrdiff_t>(e.rank));
  return AffineSpace(std::move(off), BitMatrix::from_columns(cols, ambient_));
}

bool affine_equal(const AffineSpace& a, const AffineSpace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("affine_equal: ambient mismatch");
  if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
  if (a.dimension() != b.dimension()) return false;
  if (!a.contains(b.offset())) return false;
  for (const auto& col : b.basis().columns())
    if (!a.direction_contains(col)) return false;
  return true;
}

// ---------------------------------------------------------------- EchelonBasis

EchelonBasis::Insert EchelonBasis::insert(BitVector row, bool rhs) {
  if (row.size() != width_) throw std::invalid_argument("EchelonBasis::insert: width mismatch");
  for (std::size_t p = row.find_first(); p < width_; p = row.find_next(p + 1)) {
    auto idx = pivot_row_[p];
    if (idx < 0) {
      pivot_row_[p] = static_cast<std::ptrdiff_t>(rows_.size());
      rows_.push_back(std::move(row));
      rhs_.push_back(rhs);
      return Insert::Added;
    }
    row ^= rows_[static_cast<std::size_t>(idx)];
    rhs ^= rhs_[static_cast<std::size_t>(idx)];
  }
  if (rhs) {
    inconsistent_ = true;
    return Insert::Inconsistent;
  }
  return Insert::Redundant;
}

AffineSpace EchelonBasis::solve() const {
  if (inconsistent_) return AffineSpace::empty_set(width_);
  BitVector y(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rhs_[i]) y.set(i);
  return solve_affine(BitMatrix::from_rows(rows_, width_), y);
}

}  // namespace eec
