#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "eec/gf2.hpp"

namespace eec {

/// Word over {0, 1, ⊥}. Text form uses '0', '1' and '?' for ⊥.
///
/// Erased coordinates always carry value 0 in `values()`, so two words with
/// the same symbols compare equal.
class ErasedWord {
 public:
  ErasedWord() = default;
  /// All-erased word of the given length.
  explicit ErasedWord(std::size_t length) : values_(length), erased_(BitVector::ones(length)), erasures_(length) {}
  /// Fully known word.
  static ErasedWord from_bits(const BitVector& bits);
  /// `bits` with the coordinates set in `mask` erased.
  static ErasedWord with_erasures(const BitVector& bits, const BitVector& mask);
  static ErasedWord from_string(std::string_view text);

  std::size_t size() const { return values_.size(); }
  std::size_t erasure_count() const { return erasures_; }

  bool is_erased(std::size_t i) const { return erased_.get(i); }
  std::optional<bool> symbol(std::size_t i) const {
    if (erased_.get(i)) return std::nullopt;
    return values_.get(i);
  }
  void set_symbol(std::size_t i, std::optional<bool> s);

  const BitVector& values() const { return values_; }
  const BitVector& erased_mask() const { return erased_; }

  /// Whether `word` agrees with this one on every unerased coordinate.
  bool agrees_with(const BitVector& word) const;

  std::string to_string() const;

  friend bool operator==(const ErasedWord&, const ErasedWord&) = default;

 private:
  BitVector values_;
  BitVector erased_;
  std::size_t erasures_ = 0;
};

/// Received word of an expander code, indexed by global edge id.
using ReceivedWord = ErasedWord;

}  // namespace eec
