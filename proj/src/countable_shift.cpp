#include "hypershift/countable_shift.hpp"

#include "hypershift/error.hpp"

namespace hypershift {

CountableShift::CountableShift(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

void CountableShift::add_pair(ConcretePair pair) {
  if (pair.pattern.empty() || pair.pattern.size() != pair.rewrite.size()) {
    throw Error(ErrorKind::MalformedInput, "pair pattern and rewrite must be non-empty and of equal length");
  }
  for (const Word* w : {&pair.pattern, &pair.rewrite}) {
    for (Symbol s : *w) {
      if (index_of(s) >= alphabet_.size()) throw Error(ErrorKind::MalformedInput, "pair symbol out of range");
    }
  }
  Group* group = nullptr;
  for (auto& g : groups_) {
    if (g.anchor == pair.anchor && g.length == pair.pattern.size()) group = &g;
  }
  if (!group) {
    groups_.push_back(Group{pair.anchor, pair.pattern.size(), {}});
    group = &groups_.back();
  }
  if (!group->by_pattern.emplace(pair.pattern, concrete_.size()).second) {
    throw Error(ErrorKind::MalformedInput, "duplicate pair at anchor " + std::to_string(pair.anchor));
  }
  concrete_.push_back(std::move(pair));
}

void CountableShift::add_family(std::shared_ptr<const PairFamily> family) {
  if (!family) throw Error(ErrorKind::MalformedInput, "null pair family");
  families_.push_back(std::move(family));
}

std::optional<PairMatch> CountableShift::match(const Tape& s) const {
  std::optional<PairMatch> found;
  auto record = [&](PairMatch m) {
    if (found) {
      throw Error(ErrorKind::AmbiguousMatch, "sequence coincides with pairs at anchors " +
                                                 std::to_string(found->pair.anchor) + " and " +
                                                 std::to_string(m.pair.anchor));
    }
    found = std::move(m);
  };
  for (const auto& g : groups_) {
    auto it = g.by_pattern.find(s.window(g.anchor, g.anchor + static_cast<std::int64_t>(g.length) - 1));
    if (it != g.by_pattern.end()) record(PairMatch{concrete_[it->second], -1, it->second});
  }
  for (std::size_t f = 0; f < families_.size(); ++f) {
    if (auto p = families_[f]->match(s)) record(PairMatch{std::move(*p), static_cast<int>(f), 0});
  }
  return found;
}

Tape CountableShift::step(const Tape& s) const {
  auto m = match(s);
  if (!m) return s;
  return s.with_word(m->pair.anchor, m->pair.rewrite).shifted(m->pair.shift);
}

std::vector<ConcretePair> CountableShift::pairs_up_to_level(std::uint64_t level) const {
  std::vector<ConcretePair> out = concrete_;
  for (const auto& f : families_) {
    std::uint64_t n = f->count_up_to_level(level);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(f->at(i));
  }
  return out;
}

CountableShift gs_to_cgs(const GeneralizedShift& gs) {
  CountableShift cgs(gs.alphabet());
  for (std::size_t c = 0; c < gs.word_count(); ++c) {
    cgs.add_pair(ConcretePair{gs.window_lo(), gs.word(c), gs.rewrite_at(c), gs.shift_at(c)});
  }
  return cgs;
}

}  // namespace hypershift
