#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "hypershift/analog_shift.hpp"
#include "hypershift/classification.hpp"
#include "hypershift/compiler.hpp"
#include "hypershift/countable_shift.hpp"
#include "hypershift/error.hpp"
#include "hypershift/generalized_shift.hpp"

using namespace hypershift;
using test::tape;
using test::word;

namespace {

const Alphabet kBinary({"0", "1"}, "0");

/// Random GS over {0,1} on the window [lo, lo + length) with shifts in
/// [-max_shift, max_shift].
GeneralizedShift random_gs(std::mt19937_64& rng, std::int64_t lo, std::size_t length, std::int64_t max_shift) {
  GeneralizedShift gs(kBinary, lo, length);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<std::int64_t> shift(-max_shift, max_shift);
  for (std::size_t c = 0; c < gs.word_count(); ++c) {
    Word r;
    for (std::size_t i = 0; i < length; ++i) r.push_back(symbol_at(bit(rng)));
    gs.set_rule(gs.word(c), r, shift(rng));
  }
  return gs;
}

/// Steps of a and b agree on every sequence with support in [-radius, radius].
bool same_on_support(const GeneralizedShift& a, const GeneralizedShift& b, std::int64_t radius) {
  std::uint64_t total = std::uint64_t{1} << (2 * radius + 1);
  for (std::uint64_t code = 0; code < total; ++code) {
    Tape s = test::tape_from_code(code, 2, -radius, radius);
    if (!(a.step(s) == b.step(s))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gs_step") {
  SUBCASE("identity GS leaves s unchanged") {
    GeneralizedShift gs(kBinary, -1, 3);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
      Tape s = test::random_tape(rng, 2, -5, 5);
      CHECK(gs_step(gs, s) == s);
    }
  }
  SUBCASE("identity rewrite with F = +1 is the left shift") {
    GeneralizedShift gs(kBinary, 0, 2);
    for (std::size_t c = 0; c < gs.word_count(); ++c) gs.set_rule(gs.word(c), gs.word(c), 1);
    Tape s = tape(kBinary, "1101", -1);
    CHECK(gs_step(gs, s) == s.shifted(1));
  }
  SUBCASE("bit flip at 0: ...0.0 1... -> ...0.1 1...") {
    GeneralizedShift gs(kBinary, 0, 1);
    gs.set_rule(word(kBinary, "0"), word(kBinary, "1"), 0);
    gs.set_rule(word(kBinary, "1"), word(kBinary, "0"), 0);
    CHECK(gs_step(gs, tape(kBinary, "01")) == tape(kBinary, "11"));
  }
  SUBCASE("malformed rules are rejected") {
    GeneralizedShift gs(kBinary, 0, 2);
    CHECK_THROWS_AS(gs.set_rule(word(kBinary, "0"), word(kBinary, "1"), 0), Error);
  }
}

TEST_CASE("residual check") {
  std::mt19937_64 rng(2);
  SUBCASE("holds for random GS and random sequences") {
    for (int g = 0; g < 20; ++g) {
      GeneralizedShift gs = random_gs(rng, -1, 3, 2);
      for (int i = 0; i < 25; ++i) CHECK(residual_check(gs, test::random_tape(rng, 2, -6, 6)));
    }
  }
  SUBCASE("identity GS") { CHECK(residual_check(GeneralizedShift(kBinary, 0, 2), tape(kBinary, "101", -1))); }
  SUBCASE("a corrupted step is caught") {
    GeneralizedShift gs = random_gs(rng, -1, 3, 1);
    Tape s = tape(kBinary, "1011", -2);
    Tape image = gs.step(s);
    std::int64_t far = 5;
    Tape corrupted = image.with_symbol(far, image.at(far) == kBlank ? symbol_at(1) : kBlank);
    CHECK_FALSE(residual_matches(gs, s, corrupted));
  }
}

TEST_CASE("binary recoding") {
  Alphabet three({"0", "1", "2"}, "0");
  GeneralizedShift gs(three, 0, 1);
  gs.set_rule(word(three, "1"), word(three, "2"), 1);
  gs.set_rule(word(three, "2"), word(three, "1"), -1);
  BinaryRecoding rec = recode_to_binary(gs);
  CHECK(rec.width == 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Tape s = test::random_tape(rng, 3, -4, 4);
    CHECK(rec.shift.step(rec.encode(s)) == rec.encode(gs.step(s)));
  }
}

TEST_CASE("analog shift") {
  SUBCASE("finite effects match the generalized shift") {
    std::mt19937_64 rng(4);
    GeneralizedShift gs = random_gs(rng, -1, 3, 1);
    AnalogShift as(kBinary, Window{-1, 3}, Window{-1, 3});
    for (std::size_t c = 0; c < gs.word_count(); ++c) {
      as.set_shift(gs.word(c), gs.shift_at(c));
      as.set_effect(gs.word(c), gs.rewrite_at(c));
    }
    for (int i = 0; i < 50; ++i) {
      Tape s = test::random_tape(rng, 2, -5, 5);
      CHECK(asm_step(as, s) == gs_step(gs, s));
    }
  }
  SUBCASE("the loading rule writes a_inf left of the dot") {
    auto spec = test::corpus("decider");
    const TuringMachine& tm = *spec.tm;
    AnalogShift as = tm_advice_to_asm(tm, spec.advice);
    MachineLayout layout = asm_layout(tm);
    Tape s = asm_encode_input(tm, word(tm.alphabet(), "1"));
    CHECK(s.at(0) == layout.extra());
    Word key{kBlank, layout.extra(), symbol_at(1)};
    CHECK(as.shift(key) == 0);
    Tape t = asm_step(as, s);
    CHECK(t.at(0) == layout.state_symbol(tm.initial()));
    CHECK(t.at(1) == symbol_at(1));
    CHECK(t.at(2) == kBlank);
    CHECK_FALSE(t.compactly_supported());
    for (std::uint64_t k = 0; k < 12; ++k) CHECK(t.at(-1 - static_cast<std::int64_t>(k)) == spec.advice->tail_digit(k));
  }
}

TEST_CASE("countable shift matching") {
  SUBCASE("single pair does not match the blank sequence") {
    CountableShift cgs(kBinary);
    cgs.add_pair(ConcretePair{0, word(kBinary, "1"), word(kBinary, "0"), 0});
    CHECK_FALSE(cgs_match(cgs, Tape()).has_value());
    CHECK(cgs_step(cgs, Tape()) == Tape());
  }
  auto spec = test::corpus("inc");
  const TuringMachine& tm = *spec.tm;
  CountableShift cgs = tm_advice_to_cgs(tm, spec.advice);
  const Alphabet& a = cgs.alphabet();
  SUBCASE("...0d.q0 1 d0... matches the loading pair for n = 0") {
    Tape s = Tape::from_word(a.parse_word("d q0 1 d"), -1);
    auto m = cgs_match(cgs, s);
    REQUIRE(m);
    CHECK(m->family == 0);
    CHECK(m->pair.anchor == -1);
    CHECK(m->pair.pattern == a.parse_word("d q0 1 d"));
    CHECK(m->pair.rewrite == a.parse_word("0 q0 1 0"));
  }
  SUBCASE("...d.dd... lies outside S_P") {
    Tape s = Tape::from_word(a.parse_word("d d d"), -1);
    CHECK_FALSE(cgs_match(cgs, s).has_value());
    CHECK(cgs_step(cgs, s) == s);
  }
  SUBCASE("two coinciding pairs are reported as ambiguous") {
    CountableShift bad(kBinary);
    bad.add_pair(ConcretePair{0, word(kBinary, "1"), word(kBinary, "1"), 0});
    bad.add_pair(ConcretePair{1, word(kBinary, "1"), word(kBinary, "1"), 0});
    try {
      bad.match(tape(kBinary, "11"));
      FAIL("expected AmbiguousMatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::AmbiguousMatch);
    }
  }
}

TEST_CASE("cgs_step applies rewrite then shift") {
  Alphabet a({"0", "1", "q0", "p"}, "0");
  CountableShift cgs(a);
  cgs.add_pair(ConcretePair{-1, a.parse_word("0 q0 0"), a.parse_word("p 0 0"), -1});
  Tape s = Tape::from_word(a.parse_word("q0 1"), 0);
  // s reads 0 q0 1 at -1..1, so it is not in S_P.
  CHECK(cgs_step(cgs, s) == s);
  Tape t = Tape::from_word(a.parse_word("q0"), 0);
  // Rewrite gives p at -1, then the right shift moves it to 0.
  CHECK(cgs_step(cgs, t) == Tape::from_word(a.parse_word("p"), 0));
}

TEST_CASE("gs_to_cgs") {
  SUBCASE("identity GS over {0,1} with a one-cell window") {
    CountableShift cgs = gs_to_cgs(GeneralizedShift(kBinary, 0, 1));
    REQUIRE(cgs.concrete().size() == 2);
    for (const auto& p : cgs.concrete()) {
      CHECK(p.rewrite == p.pattern);
      CHECK(p.shift == 0);
    }
  }
  SUBCASE("pure shift GS") {
    GeneralizedShift gs(kBinary, 0, 2);
    for (std::size_t c = 0; c < gs.word_count(); ++c) gs.set_rule(gs.word(c), gs.word(c), -2);
    CountableShift cgs = gs_to_cgs(gs);
    CHECK(cgs.concrete().size() == 4);
    for (const auto& p : cgs.concrete()) {
      CHECK(p.rewrite == p.pattern);
      CHECK(p.shift == -2);
    }
  }
  SUBCASE("agrees with the GS on all sequences supported in [-6, 6]") {
    std::mt19937_64 rng(5);
    for (int g = 0; g < 5; ++g) {
      GeneralizedShift gs = random_gs(rng, -1, 3, 2);
      CountableShift cgs = gs_to_cgs(gs);
      std::size_t agree = 0;
      for (std::uint64_t code = 0; code < 8192; ++code) {
        Tape s = test::tape_from_code(code, 2, -6, 6);
        agree += cgs_step(cgs, s) == gs_step(gs, s) ? 1 : 0;
      }
      CHECK(agree == 8192);
    }
  }
}

TEST_CASE("pair consistency") {
  SUBCASE("disagreeing patterns are fine") {
    CountableShift cgs(kBinary);
    cgs.add_pair(ConcretePair{0, word(kBinary, "1"), word(kBinary, "1"), 0});
    cgs.add_pair(ConcretePair{0, word(kBinary, "0"), word(kBinary, "0"), 0});
    CHECK(check_pair_consistency(cgs, 0).ok);
  }
  SUBCASE("disjoint footprints always conflict") {
    CountableShift cgs(kBinary);
    cgs.add_pair(ConcretePair{0, word(kBinary, "1"), word(kBinary, "1"), 0});
    cgs.add_pair(ConcretePair{5, word(kBinary, "1"), word(kBinary, "1"), 0});
    ConsistencyReport r = check_pair_consistency(cgs, 0);
    REQUIRE_FALSE(r.ok);
    REQUIRE(r.conflict);
    CHECK(r.conflict->first.coincides(r.conflict->witness));
    CHECK(r.conflict->second.coincides(r.conflict->witness));
    CHECK(r.conflict->witness == tape(kBinary, "100001"));
  }
  SUBCASE("compiled shifts are consistent up to bound 20") {
    for (const char* name : {"inc", "decider", "swap", "reversible"}) {
      auto spec = test::corpus(name);
      INFO(name);
      CHECK(check_pair_consistency(tm_advice_to_cgs(*spec.tm, spec.advice), 20).ok);
    }
  }
}

TEST_CASE("modifies at infinity") {
  std::mt19937_64 rng(6);
  CHECK_FALSE(modifies_at_infinity(gs_to_cgs(random_gs(rng, -1, 3, 1))).yes);
  CountableShift one(kBinary);
  one.add_pair(ConcretePair{3, word(kBinary, "1"), word(kBinary, "0"), 0});
  CHECK_FALSE(modifies_at_infinity(one).yes);

  auto spec = test::corpus("inc");
  CountableShift cgs = tm_advice_to_cgs(*spec.tm, spec.advice);
  InfinityReport r = modifies_at_infinity(cgs);
  REQUIRE(r.yes);
  REQUIRE(r.witness);
  const auto& family = *cgs.families().front();
  for (std::uint64_t n = 0; n < 6; ++n) {
    auto w = family.modification_witness(n);
    REQUIRE(w);
    CHECK(w->position == static_cast<std::int64_t>(n) + 2);
    std::int64_t at = w->position - w->pair.anchor;
    CHECK(w->pair.pattern[at] != w->pair.rewrite[at]);
  }
}

TEST_CASE("expressing a countable shift as a generalized shift") {
  SUBCASE("empty P is the identity at N = 0") {
    auto gs = try_express_as_gs(CountableShift(kBinary), 3);
    REQUIRE(gs);
    CHECK(gs->window_length() == 1);
    CHECK(same_on_support(*gs, GeneralizedShift(kBinary, 0, 1), 5));
  }
  SUBCASE("gs_to_cgs round trip is extensional") {
    std::mt19937_64 rng(8);
    for (int g = 0; g < 5; ++g) {
      GeneralizedShift gs = random_gs(rng, -1, 3, 1);
      auto back = try_express_as_gs(gs_to_cgs(gs), 2);
      REQUIRE(back);
      CHECK(same_on_support(*back, gs, 5));
    }
  }
  SUBCASE("compiled shift is not a GS up to N = 4") {
    auto spec = test::corpus("inc");
    CHECK_FALSE(try_express_as_gs(tm_advice_to_cgs(*spec.tm, spec.advice), 4).has_value());
  }
}

TEST_CASE("sequence metric") {
  std::mt19937_64 rng(9);
  Tape s = tape(kBinary, "1");
  CHECK(sequence_metric(s, s, 2, 10) == 0);
  CHECK(sequence_metric(s, Tape(), 2, 0) == 1);
  // Position 2 only counts from depth 2 on, with weight 4^-2.
  Tape t = tape(kBinary, "101");
  CHECK(sequence_metric(t, s, 2, 1) == 0);
  CHECK(sequence_metric(t, s, 2, 2) == Rational(1, 16));
  Rational prev = metric_tail_bound(2, 0);
  for (std::uint64_t d = 1; d < 20; ++d) {
    Rational next = metric_tail_bound(2, d);
    CHECK(next < prev);
    prev = next;
  }
  for (int i = 0; i < 50; ++i) {
    Tape a = test::random_tape(rng, 2, -8, 8), b = test::random_tape(rng, 2, -8, 8);
    Rational full = sequence_metric(a, b, 2, 8);
    for (std::uint64_t d = 0; d < 8; ++d) CHECK(full - sequence_metric(a, b, 2, d) <= metric_tail_bound(2, d));
  }
}

TEST_CASE("diagonal witness") {
  SUBCASE("empty P returns the blank sequence") {
    auto w = find_nonmember(CountableShift(kBinary), 2);
    REQUIRE(w);
    CHECK(*w == Tape());
  }
  SUBCASE("a total GS leaves nothing outside S_P") {
    std::mt19937_64 rng(10);
    CHECK_FALSE(find_nonmember(gs_to_cgs(random_gs(rng, -1, 2, 1)), 2).has_value());
  }
  SUBCASE("compiled shift has a certified non-member") {
    auto spec = test::corpus("decider");
    CountableShift cgs = tm_advice_to_cgs(*spec.tm, spec.advice);
    auto w = find_nonmember(cgs, 2);
    REQUIRE(w);
    CHECK_FALSE(cgs.match(*w).has_value());
    Tape dd = Tape::from_word(cgs.alphabet().parse_word("d d"), -1);
    CHECK_FALSE(cgs.match(dd).has_value());
  }
}
