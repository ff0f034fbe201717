#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypershift/advice.hpp"
#include "hypershift/alphabet.hpp"
#include "hypershift/tape.hpp"

namespace hypershift {

enum class State : std::uint16_t {};

constexpr std::size_t index_of(State q) { return static_cast<std::size_t>(q); }
constexpr State state_at(std::size_t i) { return static_cast<State>(i); }

/// Tape shift after writing. Left means the tape moves left (the head
/// advances to the right): the new position 0 is the old position 1.
enum class Move : std::int8_t { Right = -1, Stay = 0, Left = 1 };

constexpr std::int64_t shift_of(Move m) { return static_cast<std::int64_t>(m); }

struct Transition {
  State next;
  Symbol write;
  Move move;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct TransitionRule {
  State state;
  Symbol read;
  Transition result;
};

/// (Q, q0, q_halt, Sigma, delta) with delta total on non-halting states.
class TuringMachine {
 public:
  TuringMachine(std::vector<std::string> states, const std::string& initial, const std::string& halting,
                Alphabet alphabet, const std::vector<TransitionRule>& rules);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return states_.size(); }
  const std::string& state_name(State q) const { return states_.at(index_of(q)); }
  const std::vector<std::string>& state_names() const { return states_; }
  State state(const std::string& name) const;
  State initial() const { return initial_; }
  State halting() const { return halting_; }

  const Transition& delta(State q, Symbol read) const;
  /// Rules in (state, symbol) order.
  std::vector<TransitionRule> rules() const;

  /// True when some transition leads into the initial state.
  bool initial_in_image() const;

  TuringMachine with_rule(State q, Symbol read, Transition t) const;

 private:
  std::vector<std::string> states_;
  State initial_;
  State halting_;
  Alphabet alphabet_;
  std::vector<std::optional<Transition>> delta_;
};

struct Config {
  State state;
  Tape tape;

  friend bool operator==(const Config& a, const Config& b) { return a.state == b.state && a.tape == b.tape; }
};

/// One application of the global transition function.
Config tm_step(const TuringMachine& tm, const Config& c);

struct RunResult {
  Config config;
  std::uint64_t steps = 0;
  bool halted = false;
};

RunResult tm_run(const TuringMachine& tm, Config c0, std::uint64_t max_steps);

/// An input of size n: ...0.t_0...t_n 0... with every t_i non-blank.
/// Returns n, or throws MalformedInput.
std::uint64_t input_size(const Tape& input);

Tape input_tape(const Word& word);

/// (q0, t_in^a): the input followed by a_n at positions n+1..n+p(n).
Config apply_advice(const TuringMachine& tm, const AdviceOracle& advice, const Tape& input);

/// Machine with advice run as in real time: step 1 loads a_n, every later
/// step is tm_step. Each entry is the configuration after that many steps.
struct AdviceRun {
  std::vector<Config> trace;
  bool halted = false;
  std::uint64_t steps() const { return trace.size() - 1; }
};

AdviceRun run_with_advice(const TuringMachine& tm, const AdviceOracle& advice, const Tape& input,
                          std::uint64_t max_steps);

struct InjectivityReport {
  bool injective = true;
  /// Two distinct non-halting configurations with equal images.
  std::optional<std::pair<Config, Config>> counterexample;
};

/// Decides injectivity of the global transition function on compactly
/// supported non-halting configurations.
///
/// A configuration c with delta(q, a) = (r, w, e) is a preimage of u = (r, t)
/// iff t at position -e holds w; the preimage is then unique. Two rules into
/// the same state therefore collide iff they move differently, or move alike
/// and write the same symbol.
InjectivityReport check_injective_transition(const TuringMachine& tm);

}  // namespace hypershift
