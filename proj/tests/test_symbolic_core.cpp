#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "hypershift/advice.hpp"
#include "hypershift/error.hpp"
#include "hypershift/tape.hpp"
#include "hypershift/turing_machine.hpp"

using namespace hypershift;
using test::tape;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

TuringMachine two_state(const std::vector<TransitionRule>& rules) {
  return TuringMachine({"q0", "q1"}, "q0", "q1", Alphabet({"0", "1"}, "0"), rules);
}

}  // namespace

TEST_CASE("alphabet invariants") {
  Alphabet a({"1", "0", "x"}, "0");
  CHECK(a.blank_name() == "0");
  CHECK(index_of(a.symbol("0")) == 0);
  CHECK(a.size() == 3);
  CHECK(a.display_word(a.parse_word("x10")) == "x10");
  CHECK(a.parse_word("x 1 0") == a.parse_word("x10"));
  CHECK(kind_of([] { Alphabet({"0"}, "0"); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([] { Alphabet({"0", "1"}, "2"); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([] { Alphabet({"0", "1", "1"}, "0"); }) == ErrorKind::MalformedInput);

  Alphabet wide({"_", "ab", "c"}, "_");
  CHECK_FALSE(wide.compact_names());
  CHECK(wide.format_word(wide.parse_word("ab c _")) == "ab c _");
}

TEST_CASE("tape lookup, editing and shifting") {
  Alphabet a({"0", "1"}, "0");
  SUBCASE("all-blank tape reads blank everywhere") {
    Tape t;
    CHECK(t.window(-5, 5) == Word(11, kBlank));
    CHECK(t.compactly_supported());
    CHECK_FALSE(t.support().has_value());
  }
  SUBCASE("window inside the materialized region is a verbatim copy") {
    Tape t = tape(a, "1101", -2);
    CHECK(t.window(-2, 1) == test::word(a, "1101"));
    CHECK(t.window(-1, 0) == test::word(a, "10"));
  }
  SUBCASE("positive shift is a left shift") {
    Tape t = tape(a, "11", 0);
    Tape s = t.shifted(1);
    for (std::int64_t i = -4; i <= 4; ++i) CHECK(s.at(i) == t.at(i + 1));
    CHECK(s.shifted(-1) == t);
  }
  SUBCASE("equality ignores how much is materialized") {
    CHECK(tape(a, "0110", -3) == tape(a, "11", -2));
    CHECK(tape(a, "0110", -3).canonical() == std::make_pair(std::int64_t{-2}, test::word(a, "11")));
  }
  SUBCASE("render marks the dot") { CHECK(render_tape(tape(a, "11", -1), a, -2, 2) == "...01.100..."); }
}

TEST_CASE("advice tail stream") {
  Alphabet a({"0", "1"}, "0");
  auto adv = std::make_shared<const AdviceOracle>(Polynomial({1, 1}), "binary", builtin_generator("binary", symbol_at(1)));
  CHECK(adv->advice(0) == test::word(a, "0"));
  CHECK(adv->advice(1) == test::word(a, "01"));
  CHECK(adv->advice(2) == test::word(a, "001"));
  // a_inf = ...a_2 a_1 a_0 = ...001 01 0
  Tape t(Stream::advice_tail(adv), 0, {}, Stream::blank());
  CHECK(t.window(-3, -1) == test::word(a, "010"));
  CHECK(t.window(-6, -1) == test::word(a, "001010"));
  CHECK_FALSE(t.compactly_supported());
  // Repeated queries agree.
  CHECK(t.at(-40) == t.at(-40));
  CHECK(Stream::advice_tail(adv, 2).at(0) == adv->tail_digit(2));
}

TEST_CASE("advice oracle validation") {
  CHECK(kind_of([] { Polynomial({0, 1}); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([] { Polynomial({3}); }) == ErrorKind::MalformedInput);
  Polynomial p({2, 0, 1});
  CHECK(p(0) == 2);
  CHECK(p(3) == 11);

  Alphabet a({"0", "1"}, "0");
  AdviceOracle table(Polynomial({1, 1}), {{0, test::word(a, "0")}, {1, test::word(a, "11")}});
  CHECK(table.advice(0) == test::word(a, "0"));
  SUBCASE("missing entry is an advice error") { CHECK(kind_of([&] { table.advice(2); }) == ErrorKind::Advice); }
  SUBCASE("generator names") {
    CHECK(is_builtin_generator("even_accept"));
    CHECK_FALSE(is_builtin_generator("nope"));
  }
}

TEST_CASE("tm_step on the INC machine") {
  auto spec = test::corpus("inc");
  const TuringMachine& tm = *spec.tm;
  const Alphabet& a = tm.alphabet();
  State q0 = tm.state("q0"), qh = tm.state("qh");

  SUBCASE("(q0, ...0.110...) -> (q0, ...01.10...)") {
    Config c = tm_step(tm, Config{q0, tape(a, "110")});
    CHECK(c.state == q0);
    CHECK(c.tape == tape(a, "11", -1));
  }
  SUBCASE("(q0, ...0.0...) -> (qh, ...0.10...)") {
    Config c = tm_step(tm, Config{q0, Tape()});
    CHECK(c.state == qh);
    CHECK(c.tape == tape(a, "1", 0));
  }
  SUBCASE("stepping a halting configuration is an error") {
    CHECK(kind_of([&] { tm_step(tm, Config{qh, Tape()}); }) == ErrorKind::HaltedConfig);
  }
}

TEST_CASE("stationary transition that rewrites the read symbol changes only the state") {
  TuringMachine tm = two_state({{state_at(0), symbol_at(0), {state_at(1), symbol_at(0), Move::Stay}},
                                {state_at(0), symbol_at(1), {state_at(1), symbol_at(1), Move::Stay}}});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    Tape t = test::random_tape(rng, 2, -4, 4);
    Config c = tm_step(tm, Config{state_at(0), t});
    CHECK(c.tape == t);
    CHECK(c.state == state_at(1));
  }
}

TEST_CASE("tm_run") {
  auto spec = test::corpus("inc");
  const TuringMachine& tm = *spec.tm;
  const Alphabet& a = tm.alphabet();
  Config c0{tm.initial(), tape(a, "11")};

  SUBCASE("INC on 11 halts in 3 steps with three ones left of the head") {
    RunResult r = tm_run(tm, c0, 100);
    CHECK(r.halted);
    CHECK(r.steps == 3);
    CHECK(r.config.state == tm.halting());
    CHECK(r.config.tape == tape(a, "111", -2));
  }
  SUBCASE("zero budget returns the start") {
    RunResult r = tm_run(tm, c0, 0);
    CHECK(r.steps == 0);
    CHECK(r.config == c0);
    CHECK_FALSE(r.halted);
  }
  SUBCASE("a fixed point exhausts the budget") {
    TuringMachine loop = two_state({{state_at(0), symbol_at(0), {state_at(0), symbol_at(0), Move::Stay}},
                                    {state_at(0), symbol_at(1), {state_at(1), symbol_at(1), Move::Stay}}});
    Config start{state_at(0), Tape()};
    RunResult r = tm_run(loop, start, 50);
    CHECK_FALSE(r.halted);
    CHECK(r.steps == 50);
    CHECK(r.config == start);
  }
}

TEST_CASE("inputs and advice loading") {
  auto spec = test::corpus("inc");
  const TuringMachine& tm = *spec.tm;
  const Alphabet& a = tm.alphabet();

  CHECK(input_size(tape(a, "1")) == 0);
  CHECK(input_size(tape(a, "111")) == 2);
  CHECK(kind_of([&] { input_size(tape(a, "101")); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([&] { input_size(tape(a, "1", 1)); }) == ErrorKind::MalformedInput);
  CHECK(kind_of([&] { input_size(Tape()); }) == ErrorKind::MalformedInput);

  SUBCASE("n = 0, a_0 = 0") {
    Config c = apply_advice(tm, *spec.advice, tape(a, "1"));
    CHECK(c.state == tm.initial());
    CHECK(c.tape.window(-1, 3) == test::word(a, "01000"));
  }
  SUBCASE("n = 1, a_1 = 01 lands at positions 2..3") {
    Config c = apply_advice(tm, *spec.advice, tape(a, "11"));
    CHECK(c.tape == tape(a, "1101"));
  }
  SUBCASE("run_with_advice spends one step loading") {
    AdviceRun run = run_with_advice(tm, *spec.advice, tape(a, "11"), 100);
    REQUIRE(run.halted);
    CHECK(run.steps() == 4);
    CHECK(run.trace[1] == apply_advice(tm, *spec.advice, tape(a, "11")));
  }
}

TEST_CASE("injectivity of the global transition function") {
  SUBCASE("INC is injective") { CHECK(check_injective_transition(*test::corpus("inc").tm).injective); }
  SUBCASE("two rules erasing into the same state collide") {
    TuringMachine tm = two_state({{state_at(0), symbol_at(0), {state_at(1), symbol_at(0), Move::Stay}},
                                  {state_at(0), symbol_at(1), {state_at(1), symbol_at(0), Move::Stay}}});
    InjectivityReport r = check_injective_transition(tm);
    REQUIRE_FALSE(r.injective);
    REQUIRE(r.counterexample);
    const auto& [c1, c2] = *r.counterexample;
    CHECK_FALSE(c1 == c2);
    CHECK(tm_step(tm, c1) == tm_step(tm, c2));
  }
  SUBCASE("a machine whose rules copy the read symbol is injective") {
    TuringMachine tm = two_state({{state_at(0), symbol_at(0), {state_at(1), symbol_at(0), Move::Left}},
                                  {state_at(0), symbol_at(1), {state_at(1), symbol_at(1), Move::Left}}});
    CHECK(check_injective_transition(tm).injective);
  }
  SUBCASE("agrees with brute force on every corpus machine") {
    for (const char* name : {"inc", "decider", "swap", "reversible"}) {
      auto spec = test::corpus(name);
      const TuringMachine& tm = *spec.tm;
      std::size_t k = tm.alphabet().size();
      std::uint64_t total = 1;
      for (int i = 0; i < 5; ++i) total *= k;
      // Width-5 windows around the head, every non-halting state.
      std::unordered_map<std::string, Config> seen;
      bool collision = false;
      for (std::size_t q = 0; q < tm.state_count(); ++q) {
        if (state_at(q) == tm.halting()) continue;
        for (std::uint64_t code = 0; code < total; ++code) {
          Config c{state_at(q), test::tape_from_code(code, k, -2, 2)};
          Config d = tm_step(tm, c);
          auto key = std::to_string(index_of(d.state)) + "|" + render_tape(d.tape, tm.alphabet(), -4, 4);
          auto [it, inserted] = seen.emplace(key, c);
          if (!inserted && !(it->second == c)) collision = true;
        }
      }
      INFO(name);
      CHECK(check_injective_transition(tm).injective == !collision);
    }
  }
}
