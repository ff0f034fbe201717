#pragma once

#include <cstdint>
#include <unordered_map>
#include <variant>

#include "hypershift/alphabet.hpp"
#include "hypershift/tape.hpp"

namespace hypershift {

/// Contiguous window {lo, ..., lo + length - 1}.
struct Window {
  std::int64_t lo = 0;
  std::size_t length = 1;

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(length) - 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Effect that rewrites every position left of `tail_start` with a lazy
/// stream and writes `tail` from `tail_start` on. Its domain of effect is the
/// half-line (-inf, tail_start + |tail| - 1].
struct InfiniteEffect {
  Stream left;
  std::int64_t tail_start = 0;
  Word tail;
};

/// A finite effect is a word written over D_G.
using Effect = std::variant<Word, InfiniteEffect>;

/// Analog shift map: F reads D_F, G reads D_G and may write a one-sided
/// infinite word. Words absent from the tables act as the identity with
/// shift 0.
class AnalogShift {
 public:
  AnalogShift(Alphabet alphabet, Window df, Window dg);

  const Alphabet& alphabet() const { return alphabet_; }
  const Window& df() const { return df_; }
  const Window& dg() const { return dg_; }

  void set_shift(const Word& w, std::int64_t shift);
  void set_effect(const Word& w, Effect effect);

  std::int64_t shift(const Word& w) const;
  /// nullptr for the identity.
  const Effect* effect(const Word& w) const;

  const std::unordered_map<Word, std::int64_t, WordHash>& shift_table() const { return f_; }
  const std::unordered_map<Word, Effect, WordHash>& effect_table() const { return g_; }

  Tape step(const Tape& s) const;

 private:
  Alphabet alphabet_;
  Window df_;
  Window dg_;
  std::unordered_map<Word, std::int64_t, WordHash> f_;
  std::unordered_map<Word, Effect, WordHash> g_;
};

inline Tape asm_step(const AnalogShift& a, const Tape& s) { return a.step(s); }

}  // namespace hypershift
