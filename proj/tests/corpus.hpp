#pragma once

#include <random>
#include <string>

#include "hypershift/io.hpp"

namespace test {

inline std::string data_path(const std::string& file) { return std::string(HYPERSHIFT_TEST_DATA) + "/" + file; }

/// A corpus machine by fixture name: inc, decider, swap, reversible.
inline hypershift::MachineSpec corpus(const std::string& name) {
  return hypershift::load_machine(data_path(name + ".json"));
}

/// Word from a string of single-character symbol names.
inline hypershift::Word word(const hypershift::Alphabet& a, const std::string& text) { return a.parse_word(text); }

inline hypershift::Tape tape(const hypershift::Alphabet& a, const std::string& text, std::int64_t lo = 0) {
  return hypershift::Tape::from_word(a.parse_word(text), lo);
}

/// Uniformly random compact tape with support inside [lo, hi].
inline hypershift::Tape random_tape(std::mt19937_64& rng, std::size_t k, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::size_t> d(0, k - 1);
  hypershift::Word w;
  for (std::int64_t i = lo; i <= hi; ++i) w.push_back(hypershift::symbol_at(d(rng)));
  return hypershift::Tape::from_word(w, lo);
}

/// Every tape over k symbols with support inside [lo, hi], indexed by `code`.
inline hypershift::Tape tape_from_code(std::uint64_t code, std::size_t k, std::int64_t lo, std::int64_t hi) {
  hypershift::Word w;
  for (std::int64_t i = lo; i <= hi; ++i) {
    w.push_back(hypershift::symbol_at(code % k));
    code /= k;
  }
  return hypershift::Tape::from_word(w, lo);
}

}  // namespace test
