#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>

#include "hypershift/advice.hpp"
#include "hypershift/alphabet.hpp"

namespace hypershift {

struct BlankStream {};

/// Digits of a_inf after discarding the first `skip` of them.
struct AdviceTailStream {
  std::shared_ptr<const AdviceOracle> oracle;
  std::uint64_t skip = 0;
};

/// A finite word followed by blanks.
struct LiteralStream {
  Word word;
};

/// One-sided lazy symbol source. Depth 0 is the cell adjacent to the window.
class Stream {
 public:
  using Kind = std::variant<BlankStream, AdviceTailStream, LiteralStream>;

  Stream() = default;
  Stream(Kind kind);  // NOLINT(google-explicit-constructor)

  static Stream blank() { return Stream(); }
  static Stream advice_tail(std::shared_ptr<const AdviceOracle> oracle, std::uint64_t skip = 0);
  static Stream literal(Word word);

  Symbol at(std::uint64_t depth) const;
  /// Stream with the first `count` symbols removed.
  Stream drop(std::uint64_t count) const;
  Word take(std::uint64_t count) const;

  /// Only finitely many non-blank symbols.
  bool finite() const { return !std::holds_alternative<AdviceTailStream>(kind_); }
  /// Number of leading symbols that may be non-blank for a finite stream.
  std::uint64_t finite_extent() const;

  const Kind& kind() const { return kind_; }

  /// Extensional for finite streams, structural (same oracle and offset) for
  /// advice tails.
  bool equivalent(const Stream& other) const;

 private:
  Kind kind_;
};

/// Bi-infinite sequence: a materialized window at [lo, lo + size) plus a lazy
/// stream on each side. Position 0 sits right of the dot: ...t_{-1}.t_0 t_1...
///
/// Values are immutable; every editing operation returns a new tape.
class Tape {
 public:
  Tape() = default;
  Tape(Stream left, std::int64_t lo, Word cells, Stream right);

  /// Compactly supported tape with `word` starting at position `lo`.
  static Tape from_word(Word word, std::int64_t lo = 0);

  Symbol at(std::int64_t position) const;
  /// Symbols at positions lo..hi inclusive.
  Word window(std::int64_t lo, std::int64_t hi) const;

  Tape with_symbol(std::int64_t position, Symbol s) const;
  Tape with_word(std::int64_t position, std::span<const Symbol> word) const;

  /// Left shift by `amount` (right shift when negative): result.at(i) == at(i + amount).
  Tape shifted(std::int64_t amount) const;

  /// Copy whose materialized window covers [lo, hi].
  Tape materialized(std::int64_t lo, std::int64_t hi) const;

  bool compactly_supported() const { return left_.finite() && right_.finite(); }
  /// [min, max] of non-blank positions of a compactly supported tape, or
  /// nullopt when the tape is entirely blank.
  std::optional<std::pair<std::int64_t, std::int64_t>> support() const;
  /// Positions that may hold non-blank symbols without consulting an advice
  /// stream; for compact tapes this contains the support.
  std::pair<std::int64_t, std::int64_t> extent() const;

  std::int64_t window_lo() const { return lo_; }
  std::int64_t window_hi() const { return lo_ + static_cast<std::int64_t>(cells_.size()) - 1; }
  const Word& cells() const { return cells_; }
  const Stream& left() const { return left_; }
  const Stream& right() const { return right_; }

  /// Returns the tape with positions < position replaced by `stream`
  /// (stream depth 0 at position - 1).
  Tape with_left_stream(std::int64_t position, Stream stream) const;

  /// Canonical finite description (lo, word) of a compact tape, trimmed of
  /// blanks; (0, {}) for the all-blank tape.
  std::pair<std::int64_t, Word> canonical() const;

  friend bool operator==(const Tape& a, const Tape& b);

 private:
  Stream left_;
  std::int64_t lo_ = 0;
  Word cells_;
  Stream right_;
};

struct TapeHash {
  std::size_t operator()(const Tape& t) const;
};

/// Symbols at positions lo..hi; materializes lazy streams as needed.
Word tape_window(const Tape& t, std::int64_t lo, std::int64_t hi);

/// "...w_{-k}...w_{-1}.w_0...w_m..." rendering over [lo, hi].
std::string render_tape(const Tape& t, const Alphabet& alphabet, std::int64_t lo, std::int64_t hi);

}  // namespace hypershift
