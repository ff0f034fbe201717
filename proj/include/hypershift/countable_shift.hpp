#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypershift/alphabet.hpp"
#include "hypershift/generalized_shift.hpp"
#include "hypershift/tape.hpp"

namespace hypershift {

/// (n, I) with rewrite J and shift H. A sequence coincides with the pair when
/// it reads I at positions n..n+|I|-1.
struct ConcretePair {
  std::int64_t anchor = 0;
  Word pattern;
  Word rewrite;
  std::int64_t shift = 0;

  std::int64_t last() const { return anchor + static_cast<std::int64_t>(pattern.size()) - 1; }
  bool coincides(const Tape& s) const { return s.window(anchor, last()) == pattern; }

  friend bool operator==(const ConcretePair&, const ConcretePair&) = default;
};

/// A pair together with the position r at which its rewrite differs from its
/// pattern.
struct ModificationWitness {
  ConcretePair pair;
  std::int64_t position = 0;
};

/// Countably infinite set of pairs described by a matcher and an enumerator.
///
/// Pairs are grouped into finite levels; level L's pairs follow those of
/// lower levels in the enumeration order.
class PairFamily {
 public:
  virtual ~PairFamily() = default;

  /// The pair `s` coincides with, if any.
  virtual std::optional<ConcretePair> match(const Tape& s) const = 0;

  virtual ConcretePair at(std::uint64_t index) const = 0;
  /// Number of pairs of level <= level.
  virtual std::uint64_t count_up_to_level(std::uint64_t level) const = 0;

  /// A pair at the given level whose rewrite differs from its pattern at a
  /// position whose absolute value grows without bound with the level;
  /// nullopt when the family never modifies anything.
  virtual std::optional<ModificationWitness> modification_witness(std::uint64_t level) const = 0;

  /// Registered builder name and its parameters, for serialization.
  virtual std::string builder() const = 0;
  virtual std::map<std::string, std::string> params() const = 0;
};

struct PairMatch {
  ConcretePair pair;
  /// -1 for a concrete pair, otherwise the family index.
  int family = -1;
  /// Index into the concrete list when family == -1.
  std::size_t index = 0;
};

/// Countable generalized shift with finitely many concrete pairs plus
/// finitely many infinite families.
class CountableShift {
 public:
  explicit CountableShift(Alphabet alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<ConcretePair>& concrete() const { return concrete_; }
  const std::vector<std::shared_ptr<const PairFamily>>& families() const { return families_; }

  void add_pair(ConcretePair pair);
  void add_family(std::shared_ptr<const PairFamily> family);

  /// Throws AmbiguousMatch when two pairs coincide with `s`.
  std::optional<PairMatch> match(const Tape& s) const;

  /// Identity outside S_P.
  Tape step(const Tape& s) const;

  /// Concrete pairs followed by the family pairs of level <= level.
  std::vector<ConcretePair> pairs_up_to_level(std::uint64_t level) const;

 private:
  struct Group {
    std::int64_t anchor;
    std::size_t length;
    std::unordered_map<Word, std::size_t, WordHash> by_pattern;
  };

  Alphabet alphabet_;
  std::vector<ConcretePair> concrete_;
  std::vector<Group> groups_;
  std::vector<std::shared_ptr<const PairFamily>> families_;
};

inline std::optional<PairMatch> cgs_match(const CountableShift& cgs, const Tape& s) { return cgs.match(s); }
inline Tape cgs_step(const CountableShift& cgs, const Tape& s) { return cgs.step(s); }

/// One pair (lo, w) per window word, with J = G(w) and H = F(w).
CountableShift gs_to_cgs(const GeneralizedShift& gs);

}  // namespace hypershift
