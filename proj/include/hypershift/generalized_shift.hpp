#pragma once

#include <cstdint>
#include <vector>

#include "hypershift/alphabet.hpp"
#include "hypershift/tape.hpp"

namespace hypershift {

/// Moore generalized shift with a single window D = {lo, ..., lo + length - 1}
/// serving as domain of dependence of F and G and as domain of effect.
class GeneralizedShift {
 public:
  /// Identity rewrite and zero shift on every word.
  GeneralizedShift(Alphabet alphabet, std::int64_t lo, std::size_t length);

  const Alphabet& alphabet() const { return alphabet_; }
  std::int64_t window_lo() const { return lo_; }
  std::size_t window_length() const { return length_; }
  std::size_t word_count() const { return rewrite_.size(); }

  std::size_t code(const Word& w) const;
  Word word(std::size_t code) const;

  const Word& rewrite(const Word& w) const { return rewrite_.at(code(w)); }
  std::int64_t shift(const Word& w) const { return shift_.at(code(w)); }
  const Word& rewrite_at(std::size_t code) const { return rewrite_.at(code); }
  std::int64_t shift_at(std::size_t code) const { return shift_.at(code); }

  void set_rule(const Word& w, Word rewrite, std::int64_t shift);

  Word read(const Tape& s) const { return s.window(lo_, lo_ + static_cast<std::int64_t>(length_) - 1); }

  /// Replace the window by G(w) and shift left by F(w).
  Tape step(const Tape& s) const;

  friend bool operator==(const GeneralizedShift& a, const GeneralizedShift& b) {
    return a.alphabet_ == b.alphabet_ && a.lo_ == b.lo_ && a.length_ == b.length_ && a.rewrite_ == b.rewrite_ &&
           a.shift_ == b.shift_;
  }

 private:
  Alphabet alphabet_;
  std::int64_t lo_;
  std::size_t length_;
  std::vector<Word> rewrite_;
  std::vector<std::int64_t> shift_;
};

inline Tape gs_step(const GeneralizedShift& gs, const Tape& s) { return gs.step(s); }

/// Shifting `image` back by -F(s) agrees with s everywhere outside the window,
/// checked across every materialized position plus a guard band.
bool residual_matches(const GeneralizedShift& gs, const Tape& s, const Tape& image, std::int64_t guard = 8);

inline bool residual_check(const GeneralizedShift& gs, const Tape& s) {
  return residual_matches(gs, s, gs.step(s));
}

/// Recodes a generalized shift over a k-symbol alphabet into one over {0,1},
/// each symbol becoming a block of ceil(log2 k) bits (least significant bit
/// first). The window and shifts scale by the block width.
struct BinaryRecoding {
  std::size_t width;
  GeneralizedShift shift;

  Tape encode(const Tape& s) const;
};

BinaryRecoding recode_to_binary(const GeneralizedShift& gs);

}  // namespace hypershift
