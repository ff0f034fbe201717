#include "hypershift/compiler.hpp"

#include <algorithm>
#include <limits>

#include "hypershift/error.hpp"

namespace hypershift {

namespace {

std::vector<std::string> layout_names(const TuringMachine& tm, const std::optional<std::string>& extra) {
  std::vector<std::string> names = tm.alphabet().names();
  for (const auto& q : tm.state_names()) {
    if (tm.alphabet().contains(q)) {
      throw Error(ErrorKind::MalformedInput, "state name '" + q + "' is also a tape symbol");
    }
    names.push_back(q);
  }
  if (extra) names.push_back(*extra);
  return names;
}

bool name_taken(const TuringMachine& tm, const std::string& name) {
  const auto& states = tm.state_names();
  return tm.alphabet().contains(name) || std::find(states.begin(), states.end(), name) != states.end();
}

std::string fresh_name(const TuringMachine& tm, std::string name) {
  while (name_taken(tm, name)) name += "'";
  return name;
}

bool stream_over_sigma(const Stream& st, const MachineLayout& layout) {
  if (const auto* lit = std::get_if<LiteralStream>(&st.kind())) {
    return std::all_of(lit->word.begin(), lit->word.end(), [&](Symbol s) { return layout.is_tape_symbol(s); });
  }
  return true;
}

/// Length of the run of non-blank tape symbols starting at position `from`.
std::int64_t nonblank_run(const Tape& s, std::int64_t from, std::size_t sigma) {
  std::int64_t limit = std::max(s.extent().second, from) + 1;
  std::int64_t i = from;
  while (i <= limit) {
    auto v = index_of(s.at(i));
    if (v == 0 || v >= sigma) break;
    ++i;
  }
  return i - from;
}

std::optional<Word> input_word(const Config& c, State initial) {
  if (c.state != initial || !c.tape.compactly_supported()) return std::nullopt;
  auto sup = c.tape.support();
  if (!sup || sup->first != 0) return std::nullopt;
  Word w = c.tape.window(0, sup->second);
  if (std::find(w.begin(), w.end(), kBlank) != w.end()) return std::nullopt;
  return w;
}

}  // namespace

MachineLayout::MachineLayout(const TuringMachine& tm, std::optional<std::string> extra)
    : alphabet_(layout_names(tm, extra), tm.alphabet().blank_name()),
      sigma_(tm.alphabet().size()),
      states_(tm.state_count()),
      has_extra_(extra.has_value()) {}

std::optional<State> MachineLayout::as_state(Symbol s) const {
  auto v = index_of(s);
  if (v < sigma_ || v >= sigma_ + states_) return std::nullopt;
  return state_at(v - sigma_);
}

Symbol MachineLayout::extra() const {
  if (!has_extra_) throw Error(ErrorKind::MalformedInput, "layout has no extra symbol");
  return symbol_at(sigma_ + states_);
}

std::string marker_name(const TuringMachine& tm, const std::string& base) { return fresh_name(tm, base); }

Tape moore_encode(const MachineLayout& layout, const Config& c) {
  Tape m = c.tape.materialized(0, 0);
  Word cells = m.cells();
  cells.insert(cells.begin() + (0 - m.window_lo()), layout.state_symbol(c.state));
  return Tape(m.left(), m.window_lo(), std::move(cells), m.right());
}

Config moore_decode(const MachineLayout& layout, const Tape& s) {
  Tape m = s.materialized(-1, 1);
  auto q = layout.as_state(m.at(0));
  if (!q) throw Error(ErrorKind::NotInImage, "no state symbol at position 0");
  Word cells = m.cells();
  cells.erase(cells.begin() + (0 - m.window_lo()));
  for (Symbol x : cells) {
    if (!layout.is_tape_symbol(x)) throw Error(ErrorKind::NotInImage, "non-tape symbol away from position 0");
  }
  if (!stream_over_sigma(m.left(), layout) || !stream_over_sigma(m.right(), layout)) {
    throw Error(ErrorKind::NotInImage, "non-tape symbol away from position 0");
  }
  return Config{*q, Tape(m.left(), m.window_lo(), std::move(cells), m.right())};
}

GeneralizedShift tm_to_gs(const TuringMachine& tm) {
  MachineLayout layout(tm);
  GeneralizedShift gs(layout.alphabet(), -1, 3);
  for (const auto& rule : tm.rules()) {
    Symbol q = layout.state_symbol(rule.state);
    Symbol q2 = layout.state_symbol(rule.result.next);
    Symbol w = rule.result.write;
    for (std::size_t a = 0; a < layout.sigma_size(); ++a) {
      Symbol left = symbol_at(a);
      Word rewrite;
      switch (rule.result.move) {
        case Move::Left: rewrite = {left, w, q2}; break;
        case Move::Right: rewrite = {q2, left, w}; break;
        case Move::Stay: rewrite = {left, q2, w}; break;
      }
      gs.set_rule({left, q, rule.read}, std::move(rewrite), shift_of(rule.result.move));
    }
  }
  return gs;
}

MachineLayout cgs_layout(const TuringMachine& tm) { return MachineLayout(tm, marker_name(tm)); }

AdviceLoaderFamily::AdviceLoaderFamily(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice)
    : sigma_(tm.alphabet().size()),
      q0_name_(tm.state_name(tm.initial())),
      marker_name_(marker_name(tm)),
      advice_(std::move(advice)) {
  if (!advice_) throw Error(ErrorKind::Advice, "advice loading family needs an oracle");
  MachineLayout layout = cgs_layout(tm);
  q0_ = layout.state_symbol(tm.initial());
  marker_ = layout.extra();
}

ConcretePair AdviceLoaderFamily::pair_for_input(const Word& input) const {
  if (input.empty()) throw Error(ErrorKind::MalformedInput, "empty input");
  std::uint64_t n = input.size() - 1;
  const Word& a = advice_->advice(n);
  if (a.empty() || a.front() != kBlank) {
    throw Error(ErrorKind::AssumptionViolated, "advice a_" + std::to_string(n) + " does not start with blank");
  }
  ConcretePair p;
  p.anchor = -1;
  p.pattern = {marker_, q0_};
  p.pattern.insert(p.pattern.end(), input.begin(), input.end());
  p.pattern.push_back(marker_);
  p.pattern.insert(p.pattern.end(), a.size() - 1, kBlank);
  p.rewrite = {kBlank, q0_};
  p.rewrite.insert(p.rewrite.end(), input.begin(), input.end());
  p.rewrite.insert(p.rewrite.end(), a.begin(), a.end());
  p.shift = 0;
  return p;
}

std::optional<ConcretePair> AdviceLoaderFamily::match(const Tape& s) const {
  if (s.at(-1) != marker_ || s.at(0) != q0_) return std::nullopt;
  std::int64_t m = nonblank_run(s, 1, sigma_);
  if (m == 0 || s.at(m + 1) != marker_) return std::nullopt;
  auto p = advice_->length(static_cast<std::uint64_t>(m - 1));
  for (std::int64_t i = m + 2; i <= m + static_cast<std::int64_t>(p); ++i) {
    if (s.at(i) != kBlank) return std::nullopt;
  }
  return pair_for_input(s.window(1, m));
}

std::uint64_t AdviceLoaderFamily::count_up_to_level(std::uint64_t level) const {
  const std::uint64_t base = sigma_ - 1;
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 2;
  std::uint64_t total = 0;
  std::uint64_t size = 1;
  for (std::uint64_t n = 0; n <= level; ++n) {
    if (size > cap / base) return cap;
    size *= base;
    total += size;
    if (total > cap) return cap;
  }
  return total;
}

ConcretePair AdviceLoaderFamily::at(std::uint64_t index) const {
  const std::uint64_t base = sigma_ - 1;
  std::uint64_t n = 0;
  std::uint64_t size = base;
  while (index >= size) {
    index -= size;
    ++n;
    size *= base;
  }
  Word input(n + 1);
  for (std::size_t i = input.size(); i-- > 0;) {
    input[i] = symbol_at(1 + index % base);
    index /= base;
  }
  return pair_for_input(input);
}

std::optional<ModificationWitness> AdviceLoaderFamily::modification_witness(std::uint64_t level) const {
  ConcretePair p = pair_for_input(Word(level + 1, symbol_at(1)));
  // The closing marker at n + 2 becomes the first advice symbol.
  return ModificationWitness{std::move(p), static_cast<std::int64_t>(level) + 2};
}

std::map<std::string, std::string> AdviceLoaderFamily::params() const {
  return {{"initial", q0_name_}, {"marker", marker_name_}};
}

CountableShift tm_advice_to_cgs(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice) {
  MachineLayout layout = cgs_layout(tm);
  CountableShift cgs(layout.alphabet());
  GeneralizedShift gs = tm_to_gs(tm);
  for (const auto& rule : tm.rules()) {
    for (std::size_t a = 0; a < layout.sigma_size(); ++a) {
      Word w{symbol_at(a), layout.state_symbol(rule.state), rule.read};
      cgs.add_pair(ConcretePair{-1, w, gs.rewrite(w), gs.shift(w)});
    }
  }
  auto family = std::make_shared<AdviceLoaderFamily>(tm, std::move(advice));
  // Surface a violated advice assumption at compile time for the first levels.
  for (std::uint64_t n = 0; n < 4; ++n) family->modification_witness(n);
  cgs.add_family(std::move(family));
  return cgs;
}

Tape cgs_encode_config(const TuringMachine& tm, const Config& c) {
  MachineLayout layout = cgs_layout(tm);
  if (auto input = input_word(c, tm.initial())) {
    Word w{layout.extra(), layout.state_symbol(c.state)};
    w.insert(w.end(), input->begin(), input->end());
    w.push_back(layout.extra());
    return Tape::from_word(std::move(w), -1);
  }
  return moore_encode(layout, c);
}

Config cgs_decode(const TuringMachine& tm, const Tape& s) {
  MachineLayout layout = cgs_layout(tm);
  Symbol d = layout.extra();
  if (s.at(-1) != d) return moore_decode(layout, s);
  if (s.at(0) != layout.state_symbol(tm.initial())) throw Error(ErrorKind::NotInImage, "marker without initial state");
  std::int64_t m = nonblank_run(s, 1, layout.sigma_size());
  if (m == 0 || s.at(m + 1) != d) throw Error(ErrorKind::NotInImage, "unterminated marked input");
  if (!s.compactly_supported()) throw Error(ErrorKind::NotInImage, "marked input with infinite support");
  auto [lo, hi] = s.extent();
  for (std::int64_t i = lo; i <= hi; ++i) {
    if ((i < -1 || i > m + 1) && s.at(i) != kBlank) throw Error(ErrorKind::NotInImage, "symbols outside the markers");
  }
  return Config{tm.initial(), Tape::from_word(s.window(1, m), 0)};
}

std::string loader_state_name(const TuringMachine& tm) { return fresh_name(tm, tm.state_name(tm.initial()) + "~0"); }

MachineLayout asm_layout(const TuringMachine& tm) { return MachineLayout(tm, loader_state_name(tm)); }

AnalogShift tm_advice_to_asm(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice) {
  if (!advice) throw Error(ErrorKind::Advice, "analog shift needs an advice oracle");
  if (tm.initial_in_image()) {
    throw Error(ErrorKind::AssumptionViolated, "initial state " + tm.state_name(tm.initial()) +
                                                   " is in the image of the transition function");
  }
  MachineLayout layout = asm_layout(tm);
  Window window{-1, 3};
  AnalogShift out(layout.alphabet(), window, window);
  GeneralizedShift gs = tm_to_gs(tm);
  for (std::size_t c = 0; c < gs.word_count(); ++c) {
    Word w = gs.word(c);
    out.set_effect(w, gs.rewrite_at(c));
    out.set_shift(w, gs.shift_at(c));
  }
  Symbol q1 = layout.state_symbol(tm.initial());
  for (std::size_t t = 0; t < layout.sigma_size(); ++t) {
    Word key{kBlank, layout.extra(), symbol_at(t)};
    out.set_effect(key, InfiniteEffect{Stream::advice_tail(advice, 0), 0, Word{q1, symbol_at(t)}});
  }
  return out;
}

Tape asm_encode_input(const TuringMachine& tm, const Word& input) {
  MachineLayout layout = asm_layout(tm);
  Word w{layout.extra()};
  w.insert(w.end(), input.begin(), input.end());
  return Tape::from_word(std::move(w), 0);
}

std::vector<Word> enumerate_inputs(const Alphabet& sigma, std::uint64_t max_size) {
  const std::size_t base = sigma.size() - 1;
  std::vector<Word> out;
  for (std::uint64_t len = 1; len <= max_size + 1; ++len) {
    Word w(len, symbol_at(1));
    while (true) {
      out.push_back(w);
      std::size_t i = len;
      while (i > 0 && index_of(w[i - 1]) == base) {
        w[i - 1] = symbol_at(1);
        --i;
      }
      if (i == 0) break;
      w[i - 1] = symbol_at(index_of(w[i - 1]) + 1);
    }
  }
  return out;
}

ConjugacyReport verify_realtime_conjugacy(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice,
                                          const std::vector<Word>& inputs, std::uint64_t step_budget) {
  CountableShift cgs = tm_advice_to_cgs(tm, advice);
  return verify_realtime_conjugacy(tm, std::move(advice), cgs, inputs, step_budget);
}

ConjugacyReport verify_realtime_conjugacy(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice,
                                          const CountableShift& cgs, const std::vector<Word>& inputs,
                                          std::uint64_t step_budget) {
  ConjugacyReport report;
  for (const auto& input : inputs) {
    ConjugacyCase result;
    result.input = input;
    AdviceRun run = run_with_advice(tm, *advice, input_tape(input), step_budget);
    result.halted = run.halted;
    result.machine_steps = run.steps();
    Tape s = cgs_encode_config(tm, run.trace.front());
    for (std::uint64_t n = 0; n < run.trace.size() && !result.divergence; ++n) {
      if (n > 0) {
        if (!cgs.match(s)) {
          result.divergence = Divergence{n, run.trace[n], std::nullopt, "shift reached a fixed point early"};
          break;
        }
        s = cgs.step(s);
        ++result.shift_steps;
      }
      try {
        Config got = cgs_decode(tm, s);
        if (!(got == run.trace[n])) result.divergence = Divergence{n, run.trace[n], got, "decoded state differs"};
      } catch (const Error& e) {
        result.divergence = Divergence{n, run.trace[n], std::nullopt, e.what()};
      }
    }
    if (!result.divergence && run.halted && cgs.match(s)) {
      result.divergence =
          Divergence{result.machine_steps + 1, run.trace.back(), cgs_decode(tm, s), "shift keeps moving after halting"};
    }
    report.cases.push_back(std::move(result));
  }
  return report;
}

}  // namespace hypershift
