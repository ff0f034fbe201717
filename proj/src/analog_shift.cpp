#include "hypershift/analog_shift.hpp"

#include "hypershift/error.hpp"

namespace hypershift {

AnalogShift::AnalogShift(Alphabet alphabet, Window df, Window dg)
    : alphabet_(std::move(alphabet)), df_(df), dg_(dg) {
  if (df.length == 0 || dg.length == 0) throw Error(ErrorKind::MalformedInput, "analog shift windows must be non-empty");
}

void AnalogShift::set_shift(const Word& w, std::int64_t shift) {
  if (w.size() != df_.length) throw Error(ErrorKind::MalformedInput, "F key length does not match D_F");
  if (shift == 0) {
    f_.erase(w);
  } else {
    f_[w] = shift;
  }
}

void AnalogShift::set_effect(const Word& w, Effect effect) {
  if (w.size() != dg_.length) throw Error(ErrorKind::MalformedInput, "G key length does not match D_G");
  if (const auto* finite = std::get_if<Word>(&effect)) {
    if (finite->size() != dg_.length) throw Error(ErrorKind::MalformedInput, "finite effect must cover D_G");
    if (*finite == w) {
      g_.erase(w);
      return;
    }
  }
  g_[w] = std::move(effect);
}

std::int64_t AnalogShift::shift(const Word& w) const {
  auto it = f_.find(w);
  return it == f_.end() ? 0 : it->second;
}

const Effect* AnalogShift::effect(const Word& w) const {
  auto it = g_.find(w);
  return it == g_.end() ? nullptr : &it->second;
}

Tape AnalogShift::step(const Tape& s) const {
  std::int64_t f = shift(s.window(df_.lo, df_.hi()));
  const Effect* e = effect(s.window(dg_.lo, dg_.hi()));
  Tape out = s;
  if (e) {
    if (const auto* finite = std::get_if<Word>(e)) {
      out = s.with_word(dg_.lo, *finite);
    } else {
      const auto& inf = std::get<InfiniteEffect>(*e);
      out = s.with_word(inf.tail_start, inf.tail).with_left_stream(inf.tail_start, inf.left);
    }
  }
  return out.shifted(f);
}

}  // namespace hypershift
