#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypershift/advice.hpp"
#include "hypershift/analog_shift.hpp"
#include "hypershift/countable_shift.hpp"
#include "hypershift/generalized_shift.hpp"
#include "hypershift/turing_machine.hpp"

namespace hypershift {

/// Alphabet Sigma u Q (u {extra}) used by the compiled shifts. Tape symbols
/// keep their indices, states follow, and the optional extra symbol (the
/// marker d, or the analog shift's loading state) comes last. Advice words are
/// therefore valid words of the layout alphabet as they are.
class MachineLayout {
 public:
  explicit MachineLayout(const TuringMachine& tm, std::optional<std::string> extra = std::nullopt);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t sigma_size() const { return sigma_; }
  std::size_t state_count() const { return states_; }

  Symbol state_symbol(State q) const { return symbol_at(sigma_ + index_of(q)); }
  bool is_tape_symbol(Symbol s) const { return index_of(s) < sigma_; }
  std::optional<State> as_state(Symbol s) const;
  bool has_extra() const { return has_extra_; }
  Symbol extra() const;

 private:
  Alphabet alphabet_;
  std::size_t sigma_;
  std::size_t states_;
  bool has_extra_;
};

/// Name of the marker symbol d: "d", primed until it is unused.
std::string marker_name(const TuringMachine& tm, const std::string& base = "d");

/// (q, t) -> ...t_{-1}.q t_0 t_1...: the state at position 0 and t_i at i+1
/// for i >= 0.
Tape moore_encode(const MachineLayout& layout, const Config& c);
/// Inverse of moore_encode on its image; NotInImage otherwise.
Config moore_decode(const MachineLayout& layout, const Tape& s);

/// Window {-1, 0, 1}; for delta(q, t_0) = (q', t', e) the word (t_{-1} q t_0)
/// becomes (t_{-1} t' q'), (q' t_{-1} t') or (t_{-1} q' t') for e = +1, -1, 0,
/// with F = e. Every other word is fixed with F = 0.
GeneralizedShift tm_to_gs(const TuringMachine& tm);

/// P_1 of the compiled countable shift: for each input t_0...t_n the pair
///   (-1, d q0 t_0...t_n d 0^{p(n)-1})  ->  (0 q0 t_0...t_n a_n), H = 0.
/// Level n holds the (|Sigma|-1)^{n+1} inputs of size n in lexicographic order.
class AdviceLoaderFamily final : public PairFamily {
 public:
  AdviceLoaderFamily(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice);

  std::optional<ConcretePair> match(const Tape& s) const override;
  ConcretePair at(std::uint64_t index) const override;
  std::uint64_t count_up_to_level(std::uint64_t level) const override;
  std::optional<ModificationWitness> modification_witness(std::uint64_t level) const override;
  std::string builder() const override { return "advice_loader"; }
  std::map<std::string, std::string> params() const override;

  const std::shared_ptr<const AdviceOracle>& advice() const { return advice_; }
  ConcretePair pair_for_input(const Word& input) const;

 private:
  std::size_t sigma_;
  Symbol q0_;
  Symbol marker_;
  std::string q0_name_;
  std::string marker_name_;
  std::shared_ptr<const AdviceOracle> advice_;
};

/// Countable shift over Sigma u Q u {d}: the concrete pairs P_2 (tm_to_gs
/// rules at anchor -1 on words (t_{-1} q t_0), q non-halting) plus the
/// advice loading family P_1.
CountableShift tm_advice_to_cgs(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice);

/// Encoding of the compiled countable shift: an initial input (q0 with
/// ...0.t_0...t_n 0..., every t_i non-blank) becomes ...0 d.q0 t_0...t_n d 0...;
/// every other configuration is moore-encoded.
Tape cgs_encode_config(const TuringMachine& tm, const Config& c);
Config cgs_decode(const TuringMachine& tm, const Tape& s);

/// The layout of the compiled countable shift (with marker d).
MachineLayout cgs_layout(const TuringMachine& tm);

/// Name of the loading state of the analog shift.
std::string loader_state_name(const TuringMachine& tm);

/// tm_to_gs(tm) over Sigma u Q u {q~0} extended by the rule
///   G(0.q~0 t) = (a_inf.q1 t), F = 0
/// for every t in Sigma, where q1 is the machine's initial state, which must
/// not be in the image of delta.
AnalogShift tm_advice_to_asm(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice);

MachineLayout asm_layout(const TuringMachine& tm);

/// ...0.q~0 t_0...t_n 0...
Tape asm_encode_input(const TuringMachine& tm, const Word& input);

/// All inputs of size 0..max_size (words of non-blank symbols of length
/// 1..max_size+1), shortest first, lexicographic within a length.
std::vector<Word> enumerate_inputs(const Alphabet& sigma, std::uint64_t max_size);

struct Divergence {
  std::uint64_t step = 0;
  Config expected;
  /// Decoded shift state, absent when the sequence was not decodable or the
  /// shift stopped early.
  std::optional<Config> actual;
  std::string reason;
};

struct ConjugacyCase {
  Word input;
  bool halted = false;
  std::uint64_t machine_steps = 0;
  std::uint64_t shift_steps = 0;
  std::optional<Divergence> divergence;

  bool ok() const { return !divergence; }
};

struct ConjugacyReport {
  std::vector<ConjugacyCase> cases;

  bool ok() const {
    for (const auto& c : cases) {
      if (!c.ok()) return false;
    }
    return true;
  }
};

/// Runs the machine with advice and the compiled countable shift in lockstep
/// from each input, comparing decoded states after every step and the step
/// counts at the end.
ConjugacyReport verify_realtime_conjugacy(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice,
                                          const std::vector<Word>& inputs, std::uint64_t step_budget);

/// Same check against an explicitly supplied countable shift.
ConjugacyReport verify_realtime_conjugacy(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice,
                                          const CountableShift& cgs, const std::vector<Word>& inputs,
                                          std::uint64_t step_budget);

}  // namespace hypershift
