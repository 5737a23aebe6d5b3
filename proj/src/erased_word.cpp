#include "eec/erased_word.hpp"

#include <stdexcept>

namespace eec {

ErasedWord ErasedWord::from_bits(const BitVector& bits) {
  ErasedWord w;
  w.values_ = bits;
  w.erased_ = BitVector(bits.size());
  w.erasures_ = 0;
  return w;
}

ErasedWord ErasedWord::with_erasures(const BitVector& bits, const BitVector& mask) {
  if (bits.size() != mask.size()) throw std::invalid_argument("ErasedWord: mask length mismatch");
  ErasedWord w;
  w.erased_ = mask;
  w.values_ = bits;
  for (std::size_t i = mask.find_first(); i < mask.size(); i = mask.find_next(i + 1)) w.values_.set(i, false);
  w.erasures_ = mask.popcount();
  return w;
}

ErasedWord ErasedWord::from_string(std::string_view text) {
  ErasedWord w(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '0': w.set_symbol(i, false); break;
      case '1': w.set_symbol(i, true); break;
      case '?': break;
      default: throw std::invalid_argument("erased word may only contain '0', '1' and '?'");
    }
  }
  return w;
}

void ErasedWord::set_symbol(std::size_t i, std::optional<bool> s) {
  const bool was_erased = erased_.get(i);
  if (s) {
    values_.set(i, *s);
    erased_.set(i, false);
    if (was_erased) --erasures_;
  } else {
    values_.set(i, false);
    erased_.set(i, true);
    if (!was_erased) ++erasures_;
  }
}

bool ErasedWord::agrees_with(const BitVector& word) const {
  if (word.size() != size()) throw std::invalid_argument("ErasedWord::agrees_with: length mismatch");
  auto v = values_.words();
  auto e = erased_.words();
  auto w = word.words();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (((v[i] ^ w[i]) & ~e[i]) != 0) return false;
  return true;
}

std::string ErasedWord::to_string() const {
  std::string s(size(), '0');
  for (std::size_t i = 0; i < size(); ++i) {
    if (erased_.get(i))
      s[i] = '?';
    else if (values_.get(i))
      s[i] = '1';
  }
  return s;
}

}  // namespace eec
