#include "hypershift/tape.hpp"

#include <algorithm>

#include "hypershift/error.hpp"

namespace hypershift {

Stream::Stream(Kind kind) : kind_(std::move(kind)) {
  if (auto* lit = std::get_if<LiteralStream>(&kind_)) {
    while (!lit->word.empty() && lit->word.back() == kBlank) lit->word.pop_back();
    if (lit->word.empty()) kind_ = BlankStream{};
  }
}

Stream Stream::advice_tail(std::shared_ptr<const AdviceOracle> oracle, std::uint64_t skip) {
  if (!oracle) throw Error(ErrorKind::Advice, "advice stream without an oracle");
  return Stream(AdviceTailStream{std::move(oracle), skip});
}

Stream Stream::literal(Word word) { return Stream(LiteralStream{std::move(word)}); }

Symbol Stream::at(std::uint64_t depth) const {
  return std::visit(
      [depth](const auto& k) -> Symbol {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BlankStream>) {
          return kBlank;
        } else if constexpr (std::is_same_v<K, AdviceTailStream>) {
          return k.oracle->tail_digit(k.skip + depth);
        } else {
          return depth < k.word.size() ? k.word[depth] : kBlank;
        }
      },
      kind_);
}

Stream Stream::drop(std::uint64_t count) const {
  if (count == 0) return *this;
  return std::visit(
      [count](const auto& k) -> Stream {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BlankStream>) {
          return Stream();
        } else if constexpr (std::is_same_v<K, AdviceTailStream>) {
          return Stream(AdviceTailStream{k.oracle, k.skip + count});
        } else {
          if (count >= k.word.size()) return Stream();
          return Stream::literal(Word(k.word.begin() + static_cast<std::ptrdiff_t>(count), k.word.end()));
        }
      },
      kind_);
}

Word Stream::take(std::uint64_t count) const {
  Word out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(at(i));
  return out;
}

std::uint64_t Stream::finite_extent() const {
  if (const auto* lit = std::get_if<LiteralStream>(&kind_)) return lit->word.size();
  return 0;
}

bool Stream::equivalent(const Stream& other) const {
  if (finite() && other.finite()) {
    std::uint64_t n = std::max(finite_extent(), other.finite_extent());
    for (std::uint64_t i = 0; i < n; ++i) {
      if (at(i) != other.at(i)) return false;
    }
    return true;
  }
  const auto* a = std::get_if<AdviceTailStream>(&kind_);
  const auto* b = std::get_if<AdviceTailStream>(&other.kind_);
  return a && b && a->oracle == b->oracle && a->skip == b->skip;
}

Tape::Tape(Stream left, std::int64_t lo, Word cells, Stream right)
    : left_(std::move(left)), lo_(lo), cells_(std::move(cells)), right_(std::move(right)) {}

Tape Tape::from_word(Word word, std::int64_t lo) { return Tape(Stream(), lo, std::move(word), Stream()); }

Symbol Tape::at(std::int64_t position) const {
  if (position < lo_) return left_.at(static_cast<std::uint64_t>(lo_ - 1 - position));
  std::int64_t hi = window_hi();
  if (position > hi) return right_.at(static_cast<std::uint64_t>(position - hi - 1));
  return cells_[static_cast<std::size_t>(position - lo_)];
}

Word Tape::window(std::int64_t lo, std::int64_t hi) const {
  Word out;
  if (hi < lo) return out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) out.push_back(at(i));
  return out;
}

Tape Tape::materialized(std::int64_t lo, std::int64_t hi) const {
  std::int64_t cur_hi = window_hi();
  if (lo >= lo_ && hi <= cur_hi) return *this;
  std::uint64_t pull_left = lo < lo_ ? static_cast<std::uint64_t>(lo_ - lo) : 0;
  std::uint64_t pull_right = hi > cur_hi ? static_cast<std::uint64_t>(hi - cur_hi) : 0;
  Word cells = left_.take(pull_left);
  std::reverse(cells.begin(), cells.end());
  cells.insert(cells.end(), cells_.begin(), cells_.end());
  Word tail = right_.take(pull_right);
  cells.insert(cells.end(), tail.begin(), tail.end());
  return Tape(left_.drop(pull_left), lo_ - static_cast<std::int64_t>(pull_left), std::move(cells),
              right_.drop(pull_right));
}

Tape Tape::with_symbol(std::int64_t position, Symbol s) const {
  Tape t = materialized(position, position);
  t.cells_[static_cast<std::size_t>(position - t.lo_)] = s;
  return t;
}

Tape Tape::with_word(std::int64_t position, std::span<const Symbol> word) const {
  if (word.empty()) return *this;
  std::int64_t last = position + static_cast<std::int64_t>(word.size()) - 1;
  Tape t = materialized(position, last);
  std::copy(word.begin(), word.end(), t.cells_.begin() + (position - t.lo_));
  return t;
}

Tape Tape::shifted(std::int64_t amount) const {
  Tape t = *this;
  t.lo_ -= amount;
  return t;
}

std::pair<std::int64_t, std::int64_t> Tape::extent() const {
  return {lo_ - static_cast<std::int64_t>(left_.finite_extent()),
          window_hi() + static_cast<std::int64_t>(right_.finite_extent())};
}

std::optional<std::pair<std::int64_t, std::int64_t>> Tape::support() const {
  if (!compactly_supported()) throw Error(ErrorKind::MalformedInput, "support of a non-compact tape");
  auto [lo, hi] = extent();
  while (lo <= hi && at(lo) == kBlank) ++lo;
  while (hi >= lo && at(hi) == kBlank) --hi;
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

Tape Tape::with_left_stream(std::int64_t position, Stream stream) const {
  Tape t = materialized(position, position);
  Word cells(t.cells_.begin() + (position - t.lo_), t.cells_.end());
  return Tape(std::move(stream), position, std::move(cells), t.right_);
}

std::pair<std::int64_t, Word> Tape::canonical() const {
  auto sup = support();
  if (!sup) return {0, {}};
  return {sup->first, window(sup->first, sup->second)};
}

bool operator==(const Tape& a, const Tape& b) {
  if (a.compactly_supported() && b.compactly_supported()) return a.canonical() == b.canonical();
  if (a.compactly_supported() != b.compactly_supported()) return false;
  std::int64_t lo = std::min(a.window_lo(), b.window_lo());
  std::int64_t hi = std::max(a.window_hi(), b.window_hi());
  Tape ma = a.materialized(lo, hi);
  Tape mb = b.materialized(lo, hi);
  return ma.window_lo() == mb.window_lo() && ma.cells() == mb.cells() && ma.left().equivalent(mb.left()) &&
         ma.right().equivalent(mb.right());
}

std::size_t TapeHash::operator()(const Tape& t) const {
  if (t.compactly_supported()) {
    auto [lo, word] = t.canonical();
    return WordHash{}(word) ^ (static_cast<std::size_t>(lo) * 0x9e3779b97f4a7c15ull);
  }
  return WordHash{}(t.window(-8, 8));
}

Word tape_window(const Tape& t, std::int64_t lo, std::int64_t hi) { return t.window(lo, hi); }

std::string render_tape(const Tape& t, const Alphabet& alphabet, std::int64_t lo, std::int64_t hi) {
  std::string sep = alphabet.compact_names() ? "" : " ";
  std::string out = "...";
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (i == 0) {
      out += ".";
    } else if (i != lo) {
      out += sep;
    }
    out += alphabet.name(t.at(i));
  }
  if (hi < 0) out += ".";
  out += "...";
  return out;
}

}  // namespace hypershift
