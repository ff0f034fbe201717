#pragma once

#include <cstdint>
#include <optional>

#include "hypershift/countable_shift.hpp"
#include "hypershift/generalized_shift.hpp"
#include "hypershift/rational.hpp"

namespace hypershift {

struct PairConflict {
  ConcretePair first;
  ConcretePair second;
  /// A sequence coinciding with both pairs.
  Tape witness;
};

struct ConsistencyReport {
  bool ok = true;
  std::optional<PairConflict> conflict;
};

/// Two pairs conflict iff their patterns agree wherever both are defined.
/// Concrete pairs are compared exactly; each family contributes its first
/// `bound` pairs.
ConsistencyReport check_pair_consistency(const CountableShift& cgs, std::uint64_t bound);

struct InfinityReport {
  bool yes = false;
  std::optional<ModificationWitness> witness;
  /// Levels examined when the answer is no.
  std::uint64_t up_to = 0;
};

/// A finite set of pairs can only modify inside a bounded region, so the
/// answer hinges on the families: "yes" when some family produces witnesses
/// at levels 0..bound whose positions strictly increase in absolute value.
InfinityReport modifies_at_infinity(const CountableShift& cgs, std::uint64_t bound = 8);

/// Searches N = 0..n_max for a generalized shift on the window [-N, N] equal
/// to the countable shift, verifying any candidate on every sequence with
/// support inside [-N-2, N+2]. Families contribute their pairs up to level
/// N + 2.
std::optional<GeneralizedShift> try_express_as_gs(const CountableShift& cgs, std::int64_t n_max);

/// Partial sum of sum_k (2N)^{-k} (|s_k - t_k| + |s_{-k} - t_{-k}|) over
/// k = 0..depth, N being the alphabet size. Position 0 is counted once.
Rational sequence_metric(const Tape& s, const Tape& t, std::size_t alphabet_size, std::uint64_t depth);

/// sum_{k > depth} 2 (2N - 2) (2N)^{-k}, an upper bound on what the terms
/// beyond `depth` can add.
Rational metric_tail_bound(std::size_t alphabet_size, std::uint64_t depth);

/// First sequence, in enumeration order starting from the all-blank one, with
/// support inside [-depth, depth] that coincides with no pair.
std::optional<Tape> find_nonmember(const CountableShift& cgs, std::int64_t depth);

}  // namespace hypershift
