#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "eec/erased_word.hpp"
#include "eec/gf2.hpp"
#include "eec/rational.hpp"

namespace eec {

/// Thrown when an exhaustive computation would exceed its enumeration cap.
class DimensionTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Binary linear code C0 of length d and dimension k0.
///
/// Distances are exact rationals computed exhaustively on first use and
/// memoized; copies share the memo, which is safe to fill from several
/// threads.
class LinearCode {
 public:
  /// min_distance enumerates 2^k0 codewords.
  static constexpr std::size_t kMaxDimensionForDistance = 24;
  /// generalized_distance enumerates coordinate subsets, 2^d of them.
  static constexpr std::size_t kMaxLengthForGeneralized = 24;

  /// Rejects rank-deficient generators.
  static LinearCode from_generator(const BitMatrix& generator, std::string name = "custom");

  std::size_t length() const { return generator_.cols(); }
  std::size_t dimension() const { return generator_.rows(); }
  Rational rate() const {
    return Rational(static_cast<std::int64_t>(dimension()), static_cast<std::int64_t>(length()));
  }
  const std::string& name() const { return name_; }

  /// k0 x d, full row rank.
  const BitMatrix& generator() const { return generator_; }
  /// (d - k0) x d, full row rank, generator * parity^T = 0.
  const BitMatrix& parity() const { return parity_; }
  /// Rows of parity() as d-bit masks (requires d <= 64).
  const std::vector<std::uint64_t>& parity_masks() const;

  bool contains(const BitVector& word) const;
  BitVector encode(const BitVector& message) const;
  std::vector<BitVector> codewords() const;

  /// Relative minimum distance w_min / d.
  Rational min_distance() const;
  /// r-th relative generalized distance, 1 <= r <= k0. Throws
  /// std::out_of_range for bad r.
  Rational generalized_distance(std::size_t r) const;

 private:
  struct Memo;

  LinearCode() = default;

  BitMatrix generator_;
  BitMatrix parity_;
  std::string name_;
  std::shared_ptr<Memo> memo_;
};

LinearCode repetition_code(std::size_t d);
/// Even-weight code with generator rows e_i + e_{i+1}.
LinearCode parity_code(std::size_t d);
/// [7,4,3] Hamming code in systematic form.
LinearCode hamming74();
LinearCode full_code(std::size_t d);
/// Uniformly random k0 x d generator, redrawn until it has rank k0.
LinearCode random_code(std::size_t d, std::size_t k0, std::uint64_t seed);

/// All codewords of `code` agreeing with `w` off its erasures, as a canonical
/// affine space of ambient d (empty when none agree).
AffineSpace erasure_list_decode_inner(const LinearCode& code, const ErasedWord& w);

enum class InnerDecodeStatus { Unique, Ambiguous, Inconsistent };

struct InnerDecodeResult {
  InnerDecodeStatus status;
  /// The completed codeword when status == Unique.
  BitVector word;
};

InnerDecodeResult erasure_unique_decode_inner(const LinearCode& code, const ErasedWord& w);

}  // namespace eec
