#include "eec/inner_code.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <optional>

#include "eec/rng.hpp"

namespace eec {

struct LinearCode::Memo {
  std::mutex mutex;
  std::optional<Rational> delta;
  std::map<std::size_t, Rational> generalized;
  std::vector<std::uint64_t> parity_masks;
};

LinearCode LinearCode::from_generator(const BitMatrix& generator, std::string name) {
  if (generator.rows() == 0 || generator.cols() == 0)
    throw std::invalid_argument("LinearCode: generator must be non-empty");
  if (rank(generator) != generator.rows()) throw std::invalid_argument("LinearCode: generator is rank-deficient");
  LinearCode c;
  c.generator_ = generator;
  c.parity_ = kernel_basis(generator).transposed();
  c.name_ = std::move(name);
  c.memo_ = std::make_shared<Memo>();
  if (c.length() <= 64) {
    for (const auto& row : c.parity_.row_vectors()) c.memo_->parity_masks.push_back(row.to_mask());
  }
  return c;
}

const std::vector<std::uint64_t>& LinearCode::parity_masks() const {
  if (length() > 64) throw std::length_error("parity_masks: code length exceeds 64");
  return memo_->parity_masks;
}

bool LinearCode::contains(const BitVector& word) const {
  if (word.size() != length()) return false;
  return (parity_ * word).none();
}

BitVector LinearCode::encode(const BitVector& message) const { return generator_.left_multiply(message); }

std::vector<BitVector> LinearCode::codewords() const {
  if (dimension() > kMaxDimensionForDistance) throw DimensionTooLarge("codewords: dimension above enumeration cap");
  return AffineSpace(BitVector(length()), generator_.transposed()).enumerate(kMaxDimensionForDistance);
}

Rational LinearCode::min_distance() const {
  {
    std::lock_guard lock(memo_->mutex);
    if (memo_->delta) return *memo_->delta;
  }
  if (dimension() > kMaxDimensionForDistance)
    throw DimensionTooLarge("min_distance: dimension above enumeration cap");
  const auto& rows = generator_.row_vectors();
  BitVector cur(length());
  std::size_t best = length();
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << dimension()); ++i) {
    cur ^= rows[static_cast<std::size_t>(std::countr_zero(i))];
    best = std::min(best, cur.popcount());
  }
  Rational delta(static_cast<std::int64_t>(best), static_cast<std::int64_t>(length()));
  std::lock_guard lock(memo_->mutex);
  memo_->delta = delta;
  return delta;
}

namespace {

// Rank of the given row masks after clearing the coordinates in `drop`.
std::size_t masked_rank(const std::vector<std::uint64_t>& rows, std::uint64_t drop) {
  std::uint64_t basis[64] = {};
  std::size_t rank = 0;
  for (auto r : rows) {
    std::uint64_t v = r & ~drop;
    while (v != 0) {
      const int p = std::countr_zero(v);
      if (basis[p] == 0) {
        basis[p] = v;
        ++rank;
        break;
      }
      v ^= basis[p];
    }
  }
  return rank;
}

}  // namespace

Rational LinearCode::generalized_distance(std::size_t r) const {
  if (r < 1 || r > dimension()) throw std::out_of_range("generalized_distance: r must satisfy 1 <= r <= k0");
  {
    std::lock_guard lock(memo_->mutex);
    if (auto it = memo_->generalized.find(r); it != memo_->generalized.end()) return it->second;
  }
  if (r == 1) {
    Rational d1 = min_distance();
    std::lock_guard lock(memo_->mutex);
    memo_->generalized[1] = d1;
    return d1;
  }
  const std::size_t d = length();
  if (d > kMaxLengthForGeneralized) throw DimensionTooLarge("generalized_distance: length above enumeration cap");

  // The codewords supported inside S form the subspace C ∩ F2^S of dimension
  // k0 - rank(G restricted to the complement of S). The smallest |S| for which
  // that dimension reaches r is the minimum support of an r-dim subcode.
  std::vector<std::uint64_t> rows;
  for (const auto& row : generator_.row_vectors()) rows.push_back(row.to_mask());
  const std::uint64_t all = d == 64 ? ~0ULL : ((1ULL << d) - 1);
  std::size_t found = d;
  for (std::size_t w = r; w <= d && found == d; ++w) {
    std::uint64_t s = (1ULL << w) - 1;
    while (s <= all) {
      if (dimension() - masked_rank(rows, s) >= r) {
        found = w;
        break;
      }
      // Gosper: next subset with the same popcount.
      const std::uint64_t c = s & (~s + 1);
      const std::uint64_t nx = s + c;
      if (nx == 0 || nx > all) break;
      s = (((nx ^ s) >> 2) / c) | nx;
    }
  }
  Rational out(static_cast<std::int64_t>(found), static_cast<std::int64_t>(d));
  std::lock_guard lock(memo_->mutex);
  memo_->generalized[r] = out;
  return out;
}

LinearCode repetition_code(std::size_t d) {
  BitMatrix g(1, d);
  for (std::size_t i = 0; i < d; ++i) g.set(0, i);
  return LinearCode::from_generator(g, "repetition[" + std::to_string(d) + "]");
}

LinearCode parity_code(std::size_t d) {
  if (d < 2) throw std::invalid_argument("parity_code: d must be >= 2");
  BitMatrix g(d - 1, d);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    g.set(i, i);
    g.set(i, i + 1);
  }
  return LinearCode::from_generator(g, "parity[" + std::to_string(d) + "]");
}

LinearCode hamming74() {
  return LinearCode::from_generator(BitMatrix::from_strings({"1000110", "0100101", "0010011", "0001111"}),
                                    "hamming74");
}

LinearCode full_code(std::size_t d) { return LinearCode::from_generator(BitMatrix::identity(d), "full[" + std::to_string(d) + "]"); }

LinearCode random_code(std::size_t d, std::size_t k0, std::uint64_t seed) {
  if (k0 < 1 || k0 > d) throw std::invalid_argument("random_code: need 1 <= k0 <= d");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    BitMatrix g(k0, d);
    for (std::size_t r = 0; r < k0; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (rng() & 1ULL) g.set(r, c);
    if (rank(g) == k0)
      return LinearCode::from_generator(
          g, "random[" + std::to_string(d) + "," + std::to_string(k0) + "," + std::to_string(seed) + "]");
  }
  throw std::runtime_error("random_code: could not draw a full-rank generator");
}

AffineSpace erasure_list_decode_inner(const LinearCode& code, const ErasedWord& w) {
  const std::size_t d = code.length();
  if (w.size() != d) throw std::invalid_argument("erasure_list_decode_inner: word length != code length");
  const std::size_t k0 = code.dimension();
  // Unknown message m: for every unerased coordinate i, (G^T m)_i = w_i.
  const BitMatrix gt = code.generator().transposed();
  BitMatrix system(0, k0);
  BitVector rhs(d - w.erasure_count());
  std::size_t row = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (w.is_erased(i)) continue;
    system.append_row(gt.row(i));
    if (w.values().get(i)) rhs.set(row);
    ++row;
  }
  AffineSpace messages = solve_affine(system, rhs);
  if (messages.is_empty()) return AffineSpace::empty_set(d);
  BitVector offset = code.encode(messages.offset());
  std::vector<BitVector> cols;
  for (const auto& k : messages.basis().columns()) cols.push_back(code.encode(k));
  return AffineSpace(std::move(offset), BitMatrix::from_columns(cols, d)).canonical();
}

InnerDecodeResult erasure_unique_decode_inner(const LinearCode& code, const ErasedWord& w) {
  AffineSpace list = erasure_list_decode_inner(code, w);
  if (list.is_empty()) return {InnerDecodeStatus::Inconsistent, {}};
  if (list.dimension() > 0) return {InnerDecodeStatus::Ambiguous, {}};
  return {InnerDecodeStatus::Unique, list.offset()};
}

}  // namespace eec
