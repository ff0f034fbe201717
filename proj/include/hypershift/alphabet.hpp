#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hypershift {

/// Index of a symbol inside its alphabet. The blank is always index 0.
enum class Symbol : std::uint16_t {};

constexpr Symbol kBlank{0};

constexpr std::size_t index_of(Symbol s) { return static_cast<std::size_t>(s); }
constexpr Symbol symbol_at(std::size_t i) { return static_cast<Symbol>(i); }

using Word = std::vector<Symbol>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : w) {
      h ^= index_of(s) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Ordered set of distinct symbol names with a designated blank.
///
/// The blank is moved to index 0 on construction so that compactly supported
/// sequences are exactly those whose symbol indices are zero almost everywhere.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> names, const std::string& blank);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Symbol s) const { return names_.at(index_of(s)); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& blank_name() const { return names_.front(); }

  bool contains(std::string_view name) const;
  Symbol symbol(std::string_view name) const;

  /// True when every name is a single character, so words may be written
  /// without separators.
  bool compact_names() const { return compact_; }

  /// Parses either a whitespace-separated list of names or, for alphabets of
  /// single-character names, a plain string of characters.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& word, std::string_view separator = " ") const;
  /// Concatenated when names are single characters, space-separated otherwise.
  std::string display_word(const Word& word) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> lookup_;
  bool compact_ = true;
};

}  // namespace hypershift
