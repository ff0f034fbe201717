#include "hypershift/turing_machine.hpp"

#include <algorithm>
#include <unordered_map>

#include "hypershift/error.hpp"

namespace hypershift {

TuringMachine::TuringMachine(std::vector<std::string> states, const std::string& initial,
                             const std::string& halting, Alphabet alphabet,
                             const std::vector<TransitionRule>& rules)
    : states_(std::move(states)), alphabet_(std::move(alphabet)) {
  if (states_.size() < 2) throw Error(ErrorKind::MalformedInput, "a machine needs at least two states");
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!seen.emplace(states_[i], i).second) {
      throw Error(ErrorKind::MalformedInput, "duplicate state '" + states_[i] + "'");
    }
  }
  initial_ = state(initial);
  halting_ = state(halting);
  if (initial_ == halting_) throw Error(ErrorKind::MalformedInput, "initial and halting states coincide");
  std::size_t k = alphabet_.size();
  delta_.assign(states_.size() * k, std::nullopt);
  for (const auto& rule : rules) {
    if (rule.state == halting_) throw Error(ErrorKind::MalformedInput, "transition out of the halting state");
    if (index_of(rule.state) >= states_.size() || index_of(rule.read) >= k ||
        index_of(rule.result.next) >= states_.size() || index_of(rule.result.write) >= k) {
      throw Error(ErrorKind::MalformedInput, "transition refers to an unknown state or symbol");
    }
    auto& slot = delta_[index_of(rule.state) * k + index_of(rule.read)];
    if (slot) {
      throw Error(ErrorKind::MalformedInput, "duplicate transition for (" + state_name(rule.state) + ", " +
                                                 alphabet_.name(rule.read) + ")");
    }
    slot = rule.result;
  }
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (state_at(q) == halting_) continue;
    for (std::size_t s = 0; s < k; ++s) {
      if (!delta_[q * k + s]) {
        throw Error(ErrorKind::MalformedInput, "transition function undefined on (" + states_[q] + ", " +
                                                   alphabet_.name(symbol_at(s)) + ")");
      }
    }
  }
}

State TuringMachine::state(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) throw Error(ErrorKind::Parse, "unknown state '" + name + "'");
  return state_at(static_cast<std::size_t>(it - states_.begin()));
}

const Transition& TuringMachine::delta(State q, Symbol read) const {
  if (q == halting_) throw Error(ErrorKind::HaltedConfig, "no transition out of the halting state");
  return *delta_.at(index_of(q) * alphabet_.size() + index_of(read));
}

std::vector<TransitionRule> TuringMachine::rules() const {
  std::vector<TransitionRule> out;
  for (std::size_t q = 0; q < states_.size(); ++q) {
    if (state_at(q) == halting_) continue;
    for (std::size_t s = 0; s < alphabet_.size(); ++s) {
      out.push_back({state_at(q), symbol_at(s), *delta_[q * alphabet_.size() + s]});
    }
  }
  return out;
}

bool TuringMachine::initial_in_image() const {
  auto all = rules();
  return std::any_of(all.begin(), all.end(), [&](const TransitionRule& r) { return r.result.next == initial_; });
}

TuringMachine TuringMachine::with_rule(State q, Symbol read, Transition t) const {
  TuringMachine copy = *this;
  copy.delta_.at(index_of(q) * alphabet_.size() + index_of(read)) = t;
  return copy;
}

Config tm_step(const TuringMachine& tm, const Config& c) {
  if (c.state == tm.halting()) throw Error(ErrorKind::HaltedConfig, "tm_step on a halting configuration");
  const Transition& t = tm.delta(c.state, c.tape.at(0));
  return Config{t.next, c.tape.with_symbol(0, t.write).shifted(shift_of(t.move))};
}

RunResult tm_run(const TuringMachine& tm, Config c0, std::uint64_t max_steps) {
  RunResult result{std::move(c0), 0, false};
  while (result.config.state != tm.halting() && result.steps < max_steps) {
    result.config = tm_step(tm, result.config);
    ++result.steps;
  }
  result.halted = result.config.state == tm.halting();
  return result;
}

std::uint64_t input_size(const Tape& input) {
  if (!input.compactly_supported()) throw Error(ErrorKind::MalformedInput, "input tape is not compactly supported");
  auto sup = input.support();
  if (!sup) throw Error(ErrorKind::MalformedInput, "empty input");
  if (sup->first != 0) throw Error(ErrorKind::MalformedInput, "input must start at position 0");
  for (std::int64_t i = 0; i <= sup->second; ++i) {
    if (input.at(i) == kBlank) {
      throw Error(ErrorKind::MalformedInput, "input symbol at position " + std::to_string(i) + " is blank");
    }
  }
  return static_cast<std::uint64_t>(sup->second);
}

Tape input_tape(const Word& word) { return Tape::from_word(word, 0); }

Config apply_advice(const TuringMachine& tm, const AdviceOracle& advice, const Tape& input) {
  std::uint64_t n = input_size(input);
  const Word& a = advice.advice(n);
  if (a.empty() || a.front() != kBlank) {
    throw Error(ErrorKind::AssumptionViolated, "advice string for n=" + std::to_string(n) + " must start with blank");
  }
  return Config{tm.initial(), input.with_word(static_cast<std::int64_t>(n) + 1, a)};
}

AdviceRun run_with_advice(const TuringMachine& tm, const AdviceOracle& advice, const Tape& input,
                          std::uint64_t max_steps) {
  AdviceRun run;
  run.trace.push_back(Config{tm.initial(), input});
  if (max_steps == 0) return run;
  run.trace.push_back(apply_advice(tm, advice, input));
  while (run.trace.back().state != tm.halting() && run.steps() < max_steps) {
    run.trace.push_back(tm_step(tm, run.trace.back()));
  }
  run.halted = run.trace.back().state == tm.halting();
  return run;
}

InjectivityReport check_injective_transition(const TuringMachine& tm) {
  auto rules = tm.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      const Transition& a = rules[i].result;
      const Transition& b = rules[j].result;
      if (a.next != b.next) continue;
      if (a.move == b.move && a.write != b.write) continue;
      // Common image: blank tape carrying each write where the preimage
      // expects it.
      Tape image = Tape().with_symbol(-shift_of(a.move), a.write).with_symbol(-shift_of(b.move), b.write);
      auto preimage = [&](const TransitionRule& r) {
        Tape t = image.shifted(-shift_of(r.result.move)).with_symbol(0, r.read);
        return Config{r.state, t};
      };
      return InjectivityReport{false, std::make_pair(preimage(rules[i]), preimage(rules[j]))};
    }
  }
  return InjectivityReport{};
}

}  // namespace hypershift
