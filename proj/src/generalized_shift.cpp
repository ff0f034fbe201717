#include "hypershift/generalized_shift.hpp"

#include <algorithm>

#include "hypershift/error.hpp"

namespace hypershift {

GeneralizedShift::GeneralizedShift(Alphabet alphabet, std::int64_t lo, std::size_t length)
    : alphabet_(std::move(alphabet)), lo_(lo), length_(length) {
  if (length == 0) throw Error(ErrorKind::MalformedInput, "generalized shift window must be non-empty");
  std::size_t count = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (count > (std::size_t{1} << 24) / alphabet_.size()) {
      throw Error(ErrorKind::MalformedInput, "generalized shift table too large");
    }
    count *= alphabet_.size();
  }
  rewrite_.reserve(count);
  for (std::size_t c = 0; c < count; ++c) rewrite_.push_back(word(c));
  shift_.assign(count, 0);
}

std::size_t GeneralizedShift::code(const Word& w) const {
  if (w.size() != length_) throw Error(ErrorKind::MalformedInput, "word length does not match the window");
  std::size_t c = 0;
  for (Symbol s : w) c = c * alphabet_.size() + index_of(s);
  return c;
}

Word GeneralizedShift::word(std::size_t c) const {
  Word w(length_);
  for (std::size_t i = length_; i-- > 0;) {
    w[i] = symbol_at(c % alphabet_.size());
    c /= alphabet_.size();
  }
  return w;
}

void GeneralizedShift::set_rule(const Word& w, Word rewrite, std::int64_t shift) {
  if (rewrite.size() != length_) throw Error(ErrorKind::MalformedInput, "rewrite length does not match the window");
  for (Symbol s : rewrite) {
    if (index_of(s) >= alphabet_.size()) throw Error(ErrorKind::MalformedInput, "rewrite symbol out of range");
  }
  std::size_t c = code(w);
  rewrite_[c] = std::move(rewrite);
  shift_[c] = shift;
}

Tape GeneralizedShift::step(const Tape& s) const {
  std::size_t c = code(read(s));
  return s.with_word(lo_, rewrite_[c]).shifted(shift_[c]);
}

bool residual_matches(const GeneralizedShift& gs, const Tape& s, const Tape& image, std::int64_t guard) {
  std::int64_t f = gs.shift(gs.read(s));
  Tape back = image.shifted(-f);
  std::int64_t dlo = gs.window_lo();
  std::int64_t dhi = dlo + static_cast<std::int64_t>(gs.window_length()) - 1;
  std::int64_t lo = std::min({s.window_lo(), back.window_lo(), dlo}) - guard;
  std::int64_t hi = std::max({s.window_hi(), back.window_hi(), dhi}) + guard;
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (i >= dlo && i <= dhi) continue;
    if (s.at(i) != back.at(i)) return false;
  }
  return true;
}

namespace {

std::size_t bit_width_for(std::size_t k) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < k) ++w;
  return std::max<std::size_t>(w, 1);
}

Word encode_word(const Word& w, std::size_t width) {
  Word bits;
  bits.reserve(w.size() * width);
  for (Symbol s : w) {
    for (std::size_t b = 0; b < width; ++b) bits.push_back(symbol_at((index_of(s) >> b) & 1));
  }
  return bits;
}

}  // namespace

Tape BinaryRecoding::encode(const Tape& s) const {
  if (!s.compactly_supported()) throw Error(ErrorKind::MalformedInput, "binary recoding needs a compact tape");
  auto [lo, word] = s.canonical();
  return Tape::from_word(encode_word(word, width), lo * static_cast<std::int64_t>(width));
}

BinaryRecoding recode_to_binary(const GeneralizedShift& gs) {
  std::size_t k = gs.alphabet().size();
  std::size_t width = bit_width_for(k);
  auto w64 = static_cast<std::int64_t>(width);
  GeneralizedShift bin(Alphabet({"0", "1"}, "0"), gs.window_lo() * w64, gs.window_length() * width);
  for (std::size_t c = 0; c < bin.word_count(); ++c) {
    Word bits = bin.word(c);
    Word symbols;
    bool valid = true;
    for (std::size_t i = 0; i < gs.window_length() && valid; ++i) {
      std::size_t v = 0;
      for (std::size_t b = 0; b < width; ++b) v |= index_of(bits[i * width + b]) << b;
      if (v >= k) valid = false;
      symbols.push_back(symbol_at(v));
    }
    if (!valid) continue;
    bin.set_rule(bits, encode_word(gs.rewrite(symbols), width), gs.shift(symbols) * w64);
  }
  return BinaryRecoding{width, std::move(bin)};
}

}  // namespace hypershift
