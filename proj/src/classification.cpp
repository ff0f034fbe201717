#include "hypershift/classification.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <random>

#include "hypershift/error.hpp"

namespace hypershift {

namespace {

constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 18;
constexpr std::uint64_t kVerificationSample = std::uint64_t{1} << 16;

bool patterns_agree(const ConcretePair& a, const ConcretePair& b) {
  std::int64_t lo = std::max(a.anchor, b.anchor);
  std::int64_t hi = std::min(a.last(), b.last());
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (a.pattern[static_cast<std::size_t>(i - a.anchor)] != b.pattern[static_cast<std::size_t>(i - b.anchor)]) {
      return false;
    }
  }
  return true;
}

Tape joint_witness(const ConcretePair& a, const ConcretePair& b) {
  return Tape().with_word(a.anchor, a.pattern).with_word(b.anchor, b.pattern);
}

/// |A|^count, or nullopt past the cap.
std::optional<std::uint64_t> bounded_power(std::size_t base, std::size_t count, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < count; ++i) {
    out *= base;
    if (out > cap) return std::nullopt;
  }
  return out;
}

Word word_of_code(std::uint64_t code, std::size_t base, std::size_t length) {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = symbol_at(code % base);
    code /= base;
  }
  return w;
}

}  // namespace

ConsistencyReport check_pair_consistency(const CountableShift& cgs, std::uint64_t bound) {
  const auto& concrete = cgs.concrete();
  auto conflict = [](const ConcretePair& a, const ConcretePair& b) {
    return ConsistencyReport{false, PairConflict{a, b, joint_witness(a, b)}};
  };
  for (std::size_t i = 0; i < concrete.size(); ++i) {
    for (std::size_t j = i + 1; j < concrete.size(); ++j) {
      const auto& a = concrete[i];
      const auto& b = concrete[j];
      // Same footprint means distinct patterns, which always disagree.
      if (a.anchor == b.anchor && a.pattern.size() == b.pattern.size()) continue;
      if (patterns_agree(a, b)) return conflict(a, b);
    }
  }
  std::vector<ConcretePair> family_pairs;
  for (const auto& f : cgs.families()) {
    for (std::uint64_t k = 0; k < bound; ++k) family_pairs.push_back(f->at(k));
  }
  for (std::size_t i = 0; i < family_pairs.size(); ++i) {
    for (const auto& c : concrete) {
      if (patterns_agree(family_pairs[i], c)) return conflict(family_pairs[i], c);
    }
    for (std::size_t j = i + 1; j < family_pairs.size(); ++j) {
      if (patterns_agree(family_pairs[i], family_pairs[j])) return conflict(family_pairs[i], family_pairs[j]);
    }
  }
  return ConsistencyReport{};
}

InfinityReport modifies_at_infinity(const CountableShift& cgs, std::uint64_t bound) {
  for (const auto& f : cgs.families()) {
    std::optional<ModificationWitness> last;
    bool growing = true;
    for (std::uint64_t level = 0; level <= bound && growing; ++level) {
      auto w = f->modification_witness(level);
      if (!w) {
        growing = false;
        break;
      }
      const auto& p = w->pair;
      std::int64_t r = w->position;
      bool genuine = r >= p.anchor && r <= p.last() &&
                     p.pattern[static_cast<std::size_t>(r - p.anchor)] !=
                         p.rewrite[static_cast<std::size_t>(r - p.anchor)];
      if (!genuine || (last && std::llabs(r) <= std::llabs(last->position))) growing = false;
      last = std::move(w);
    }
    if (growing && last) return InfinityReport{true, std::move(last), bound};
  }
  return InfinityReport{false, std::nullopt, bound};
}

std::optional<GeneralizedShift> try_express_as_gs(const CountableShift& cgs, std::int64_t n_max) {
  const std::size_t k = cgs.alphabet().size();
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const std::size_t width = static_cast<std::size_t>(2 * n + 1);
    auto words = bounded_power(k, width, kEnumerationCap);
    if (!words) break;
    auto pairs = cgs.pairs_up_to_level(static_cast<std::uint64_t>(n + 2));

    // A pair that rewrites outside the window cannot come from a shift with
    // this window: its sequences agree with the pattern there but not with
    // the rewrite, and the shift amount is forced to be H.
    bool feasible = true;
    for (const auto& p : pairs) {
      for (std::size_t i = 0; i < p.pattern.size() && feasible; ++i) {
        std::int64_t pos = p.anchor + static_cast<std::int64_t>(i);
        if ((pos < -n || pos > n) && p.pattern[i] != p.rewrite[i]) feasible = false;
      }
      if (!feasible) break;
    }
    if (!feasible) continue;

    GeneralizedShift gs(cgs.alphabet(), -n, width);
    for (std::uint64_t c = 0; c < *words && feasible; ++c) {
      Word w = gs.word(c);
      std::optional<std::pair<Word, std::int64_t>> behaviour;
      bool certain_member = false;
      auto agree = [&](const Word& out, std::int64_t shift) {
        if (!behaviour) {
          behaviour.emplace(out, shift);
          return true;
        }
        return behaviour->first == out && behaviour->second == shift;
      };
      for (const auto& p : pairs) {
        bool compatible = true;
        bool inside = p.anchor >= -n && p.last() <= n;
        for (std::size_t i = 0; i < p.pattern.size() && compatible; ++i) {
          std::int64_t pos = p.anchor + static_cast<std::int64_t>(i);
          if (pos >= -n && pos <= n && w[static_cast<std::size_t>(pos + n)] != p.pattern[i]) compatible = false;
        }
        if (!compatible) continue;
        Word out = w;
        for (std::size_t i = 0; i < p.pattern.size(); ++i) {
          std::int64_t pos = p.anchor + static_cast<std::int64_t>(i);
          if (pos >= -n && pos <= n) out[static_cast<std::size_t>(pos + n)] = p.rewrite[i];
        }
        if (!agree(out, p.shift)) {
          feasible = false;
          break;
        }
        certain_member = certain_member || inside;
      }
      if (!feasible) break;
      // Without a pair fully inside the window some completion of w may miss
      // every pair, and such a sequence is fixed.
      if (!certain_member && !agree(w, 0)) {
        feasible = false;
        break;
      }
      gs.set_rule(w, behaviour->first, behaviour->second);
    }
    if (!feasible) continue;

    const std::int64_t lo = -n - 2;
    const std::size_t span = width + 4;
    auto total = bounded_power(k, span, std::numeric_limits<std::uint64_t>::max() / k);
    bool exhaustive = total && *total <= kEnumerationCap;
    std::mt19937_64 rng(0x5eed);
    std::uint64_t checks = exhaustive ? *total : kVerificationSample;
    for (std::uint64_t c = 0; c < checks && feasible; ++c) {
      Word w;
      if (exhaustive) {
        w = word_of_code(c, k, span);
      } else {
        w.resize(span);
        for (auto& s : w) s = symbol_at(rng() % k);
      }
      Tape s = Tape::from_word(std::move(w), lo);
      if (!(cgs.step(s) == gs.step(s))) feasible = false;
    }
    if (feasible) return gs;
  }
  return std::nullopt;
}

Rational sequence_metric(const Tape& s, const Tape& t, std::size_t alphabet_size, std::uint64_t depth) {
  Rational sum = 0;
  Rational weight = 1;
  const Rational ratio(1, static_cast<unsigned long>(2 * alphabet_size));
  auto diff = [&](std::int64_t i) {
    auto a = static_cast<long>(index_of(s.at(i)));
    auto b = static_cast<long>(index_of(t.at(i)));
    return Rational(std::labs(a - b));
  };
  for (std::uint64_t k = 0; k <= depth; ++k) {
    auto i = static_cast<std::int64_t>(k);
    Rational term = k == 0 ? diff(0) : diff(i) + diff(-i);
    sum += weight * term;
    weight *= ratio;
  }
  return sum;
}

Rational metric_tail_bound(std::size_t alphabet_size, std::uint64_t depth) {
  // 2(2N-2) sum_{k>depth} (2N)^{-k} = 2(2N-2) (2N)^{-depth} / (2N-1)
  const auto two_n = static_cast<std::int64_t>(2 * alphabet_size);
  return Rational(2 * (two_n - 2)) * rpow(static_cast<std::uint64_t>(two_n), -static_cast<std::int64_t>(depth)) /
         Rational(two_n - 1);
}

std::optional<Tape> find_nonmember(const CountableShift& cgs, std::int64_t depth) {
  if (depth < 0) throw Error(ErrorKind::MalformedInput, "find_nonmember depth must be non-negative");
  const std::size_t k = cgs.alphabet().size();
  const auto span = static_cast<std::size_t>(2 * depth + 1);
  auto total = bounded_power(k, span, kEnumerationCap);
  std::uint64_t count = total ? *total : kEnumerationCap;
  for (std::uint64_t c = 0; c < count; ++c) {
    Tape s = Tape::from_word(word_of_code(c, k, span), -depth);
    if (!cgs.match(s)) return s;
  }
  return std::nullopt;
}

}  // namespace hypershift
