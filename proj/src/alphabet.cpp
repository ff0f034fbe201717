#include "hypershift/alphabet.hpp"

#include <algorithm>
#include <cctype>

#include "hypershift/error.hpp"

namespace hypershift {

Alphabet::Alphabet(std::vector<std::string> names, const std::string& blank) {
  if (names.size() < 2) throw Error(ErrorKind::MalformedInput, "alphabet needs at least two symbols");
  if (names.size() > 0xffff) throw Error(ErrorKind::MalformedInput, "alphabet too large");
  auto it = std::find(names.begin(), names.end(), blank);
  if (it == names.end()) throw Error(ErrorKind::MalformedInput, "blank '" + blank + "' is not in the alphabet");
  std::rotate(names.begin(), it, it + 1);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& n = names[i];
    if (n.empty()) throw Error(ErrorKind::MalformedInput, "empty symbol name");
    if (std::any_of(n.begin(), n.end(), [](unsigned char c) { return std::isspace(c) || c == '.'; })) {
      throw Error(ErrorKind::MalformedInput, "symbol name '" + n + "' contains whitespace or '.'");
    }
    if (!lookup_.emplace(n, symbol_at(i)).second) {
      throw Error(ErrorKind::MalformedInput, "duplicate symbol '" + n + "'");
    }
    if (n.size() != 1) compact_ = false;
  }
  names_ = std::move(names);
}

bool Alphabet::contains(std::string_view name) const { return lookup_.count(std::string(name)) > 0; }

Symbol Alphabet::symbol(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) throw Error(ErrorKind::Parse, "unknown symbol '" + std::string(name) + "'");
  return it->second;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word word;
  bool spaced = std::any_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
  if (!spaced && compact_) {
    for (char c : text) word.push_back(symbol(std::string_view(&c, 1)));
    return word;
  }
  if (!spaced) {
    if (!text.empty()) word.push_back(symbol(text));
    return word;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) word.push_back(symbol(text.substr(i, j - i)));
    i = j;
  }
  return word;
}

std::string Alphabet::format_word(const Word& word, std::string_view separator) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += separator;
    out += name(word[i]);
  }
  return out;
}

std::string Alphabet::display_word(const Word& word) const {
  return format_word(word, compact_ ? "" : " ");
}

}  // namespace hypershift
