#include "hypershift/geometry.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hypershift/compiler.hpp"
#include "hypershift/error.hpp"

namespace hypershift {

namespace {

constexpr std::uint64_t kPaddingCap = std::uint64_t{1} << 16;

/// Horner evaluation of sum_{i=1}^{m} digits[i-1] b^{-i}.
Rational digit_sum(const std::vector<std::uint64_t>& digits, std::uint64_t base) {
  Rational acc = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    acc = (acc + Rational(static_cast<unsigned long>(digits[i]))) / Rational(static_cast<unsigned long>(base));
  }
  return acc;
}

/// Digits of x (positions -1, -2, ..., -count).
std::vector<std::uint64_t> left_digits(const Tape& s, const Codec& codec, std::uint64_t count) {
  std::vector<std::uint64_t> d;
  d.reserve(count);
  for (std::uint64_t i = 1; i <= count; ++i) d.push_back(codec.digit(s.at(-static_cast<std::int64_t>(i))));
  return d;
}

/// Digits of y (positions 0, 1, ..., count - 1).
std::vector<std::uint64_t> right_digits(const Tape& s, const Codec& codec, std::uint64_t count) {
  std::vector<std::uint64_t> d;
  d.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) d.push_back(codec.digit(s.at(static_cast<std::int64_t>(i))));
  return d;
}

Tape cylinder_tape(const Cylinder& c) { return Tape::from_word(c.word, c.lo); }

DisjointnessReport sweep(const std::vector<std::pair<Rect, std::size_t>>& rects) {
  std::vector<std::size_t> order(rects.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rects[a].first.x0 < rects[b].first.x0; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& [a, pa] = rects[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const auto& [b, pb] = rects[order[j]];
      if (b.x0 >= a.x1) break;
      if (a.overlaps(b)) return DisjointnessReport{false, Overlap{pa, pb, a.intersection(b)}};
    }
  }
  return DisjointnessReport{};
}

}  // namespace

Codec Codec::cantor(std::size_t k) {
  if (k < 2) throw Error(ErrorKind::UnsupportedAlphabet, "alphabet needs at least two symbols");
  return Codec{k, 2 * k - 1, false};
}

Codec Codec::binary_square(std::size_t k) {
  if (k != 2) throw Error(ErrorKind::UnsupportedAlphabet, "binary square mode needs a two-symbol alphabet");
  return Codec{2, 2, true};
}

CantorPoint encode_point(const Tape& s, const Codec& codec) { return CantorPoint{s, codec}; }

Coordinates point_coords(const CantorPoint& p, std::uint64_t ndigits) {
  if (ndigits == 0) throw Error(ErrorKind::MalformedInput, "at least one digit is needed");
  const Tape& s = p.sequence;
  auto [lo, hi] = s.extent();
  Coordinates out;
  if (s.left().finite()) {
    out.point.x = digit_sum(left_digits(s, p.codec, lo < 0 ? static_cast<std::uint64_t>(-lo) : 0), p.codec.base);
  } else {
    out.point.x = digit_sum(left_digits(s, p.codec, ndigits), p.codec.base);
    out.x_error = rpow(p.codec.base, -static_cast<std::int64_t>(ndigits));
  }
  if (s.right().finite()) {
    out.point.y = digit_sum(right_digits(s, p.codec, hi >= 0 ? static_cast<std::uint64_t>(hi + 1) : 0), p.codec.base);
  } else {
    out.point.y = digit_sum(right_digits(s, p.codec, ndigits), p.codec.base);
    out.y_error = rpow(p.codec.base, -static_cast<std::int64_t>(ndigits));
  }
  return out;
}

Point exact_point(const Tape& s, const Codec& codec) {
  if (!s.compactly_supported()) throw Error(ErrorKind::MalformedInput, "exact coordinates need a compact sequence");
  return point_coords(encode_point(s, codec)).point;
}

CantorPoint baker_shift(const CantorPoint& p, std::int64_t r) { return CantorPoint{p.sequence.shifted(r), p.codec}; }

Point baker_shift_coords(const Point& p, std::int64_t r, const Tape& s, const Codec& codec) {
  const Rational b(static_cast<unsigned long>(codec.base));
  Point q = p;
  Tape cur = s;
  for (; r > 0; --r) {
    Rational d(static_cast<unsigned long>(codec.digit(cur.at(0))));
    q = Point{(d + q.x) / b, b * q.y - d};
    cur = cur.shifted(1);
  }
  for (; r < 0; ++r) {
    Rational d(static_cast<unsigned long>(codec.digit(cur.at(-1))));
    q = Point{b * q.x - d, (d + q.y) / b};
    cur = cur.shifted(-1);
  }
  return q;
}

Rect Rect::intersection(const Rect& o) const {
  return Rect{std::max(x0, o.x0), std::min(x1, o.x1), std::max(y0, o.y0), std::min(y1, o.y1)};
}

Rect cylinder_rect(const Cylinder& c, const Codec& codec) {
  if (!c.touches_dot()) throw Error(ErrorKind::MalformedInput, "cylinder does not reach the dot");
  Tape t = cylinder_tape(c);
  Rect r;
  std::uint64_t left = c.word.empty() || c.lo >= 0 ? 0 : static_cast<std::uint64_t>(-c.lo);
  std::uint64_t right = c.word.empty() || c.hi() < 0 ? 0 : static_cast<std::uint64_t>(c.hi() + 1);
  r.x0 = digit_sum(left_digits(t, codec, left), codec.base);
  r.x1 = r.x0 + rpow(codec.base, -static_cast<std::int64_t>(left));
  r.y0 = digit_sum(right_digits(t, codec, right), codec.base);
  r.y1 = r.y0 + rpow(codec.base, -static_cast<std::int64_t>(right));
  return r;
}

Rect block_of_pair(const ConcretePair& pair, const Codec& codec) {
  return cylinder_rect(Cylinder{pair.anchor, pair.pattern}, codec);
}

std::vector<Cylinder> pair_cylinders(const ConcretePair& pair, std::size_t k) {
  std::int64_t a = pair.anchor;
  std::int64_t b = pair.last();
  std::size_t pad = a > 0 ? static_cast<std::size_t>(a) : (b < -1 ? static_cast<std::size_t>(-1 - b) : 0);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < pad; ++i) {
    count *= k;
    if (count > kPaddingCap) throw Error(ErrorKind::MalformedInput, "pair footprint too far from the dot");
  }
  std::vector<Cylinder> out;
  for (std::uint64_t c = 0; c < count; ++c) {
    Word padding(pad);
    std::uint64_t code = c;
    for (std::size_t i = pad; i-- > 0;) {
      padding[i] = symbol_at(code % k);
      code /= k;
    }
    if (a > 0) {
      Word w = padding;
      w.insert(w.end(), pair.pattern.begin(), pair.pattern.end());
      out.push_back(Cylinder{0, std::move(w)});
    } else if (b < -1) {
      Word w = pair.pattern;
      w.insert(w.end(), padding.begin(), padding.end());
      out.push_back(Cylinder{a, std::move(w)});
    } else {
      out.push_back(Cylinder{a, pair.pattern});
    }
  }
  return out;
}

std::vector<BlockPiece> pieces_of_pair(const ConcretePair& pair, std::size_t pair_index, const Codec& codec) {
  struct Branch {
    Cylinder source;
    Cylinder image;
  };
  std::vector<Branch> branches;
  for (auto& src : pair_cylinders(pair, codec.k)) {
    Cylinder img = src;
    for (std::size_t i = 0; i < pair.rewrite.size(); ++i) {
      img.word[static_cast<std::size_t>(pair.anchor + static_cast<std::int64_t>(i) - img.lo)] = pair.rewrite[i];
    }
    branches.push_back(Branch{std::move(src), std::move(img)});
  }
  // Each Baker step reads the digit crossing the dot; when the image cylinder
  // does not fix it the branch splits on the corresponding source position.
  std::int64_t h = pair.shift;
  for (std::int64_t j = 0; j < std::abs(h); ++j) {
    std::vector<Branch> next;
    for (auto& br : branches) {
      bool fixed = h > 0 ? br.image.hi() >= 0 : br.image.lo <= -1;
      if (fixed) {
        next.push_back(br);
        continue;
      }
      for (std::size_t x = 0; x < codec.k; ++x) {
        Branch nb = br;
        if (h > 0) {
          nb.source.word.push_back(symbol_at(x));
          nb.image.word.push_back(symbol_at(x));
        } else {
          nb.source.word.insert(nb.source.word.begin(), symbol_at(x));
          nb.source.lo -= 1;
          nb.image.word.insert(nb.image.word.begin(), symbol_at(x));
          nb.image.lo -= 1;
        }
        next.push_back(std::move(nb));
      }
    }
    for (auto& br : next) br.image.lo += h > 0 ? -1 : 1;
    branches = std::move(next);
  }

  const Rational sx = rpow(codec.base, -h);
  const Rational sy = rpow(codec.base, h);
  std::vector<BlockPiece> pieces;
  for (auto& br : branches) {
    Rect s = cylinder_rect(br.source, codec);
    Rect i = cylinder_rect(br.image, codec);
    Affine map{sx, i.x0 - sx * s.x0, sy, i.y0 - sy * s.y0};
    auto it = std::find_if(pieces.begin(), pieces.end(), [&](const BlockPiece& p) { return p.map == map; });
    if (it == pieces.end()) {
      pieces.push_back(BlockPiece{pair_index, h, map, {}, {}, {}, {}});
      it = pieces.end() - 1;
    }
    it->source_cylinders.push_back(std::move(br.source));
    it->image_cylinders.push_back(std::move(br.image));
    it->sources.push_back(s);
    it->images.push_back(i);
  }
  return pieces;
}

std::optional<std::size_t> BlockMap::locate(const Point& p) const {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (const auto& r : pieces[i].sources) {
      if (r.contains(p)) return i;
    }
  }
  return std::nullopt;
}

std::optional<Point> BlockMap::apply(const Point& p) const {
  auto i = locate(p);
  if (!i) return std::nullopt;
  return pieces[*i].map(p);
}

BlockMap pairs_to_blockmap(const std::vector<ConcretePair>& pairs, const Codec& codec, std::uint64_t truncation) {
  BlockMap bm;
  bm.codec = codec;
  bm.truncation = truncation;
  bm.pairs = pairs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto pieces = pieces_of_pair(pairs[i], i, codec);
    bm.pieces_per_pair.push_back(pieces.size());
    for (auto& p : pieces) bm.pieces.push_back(std::move(p));
  }
  return bm;
}

BlockMap cgs_to_blockmap(const CountableShift& cgs, std::uint64_t truncation) {
  return pairs_to_blockmap(cgs.pairs_up_to_level(truncation), Codec::cantor(cgs.alphabet().size()), truncation);
}

BlockMap binary_square_map(const BlockMap& bm) {
  return pairs_to_blockmap(bm.pairs, Codec::binary_square(bm.codec.k), bm.truncation);
}

DisjointnessReport check_disjoint_images(const BlockMap& bm) {
  std::vector<std::pair<Rect, std::size_t>> rects;
  for (std::size_t i = 0; i < bm.pieces.size(); ++i) {
    for (const auto& r : bm.pieces[i].images) rects.emplace_back(r, i);
  }
  return sweep(rects);
}

DisjointnessReport check_disjoint_sources(const BlockMap& bm) {
  std::vector<std::pair<Rect, std::size_t>> rects;
  for (std::size_t i = 0; i < bm.pieces.size(); ++i) {
    for (const auto& r : bm.pieces[i].sources) rects.emplace_back(r, i);
  }
  return sweep(rects);
}

std::vector<Tape> pair_corpus(const CountableShift& cgs, std::uint64_t truncation) {
  std::vector<Tape> out;
  std::unordered_set<Tape, TapeHash> seen;
  auto consider = [&](const Tape& t) {
    if (seen.contains(t)) return;
    seen.insert(t);
    if (cgs.match(t)) out.push_back(t);
  };
  const std::size_t k = cgs.alphabet().size();
  for (const auto& p : cgs.pairs_up_to_level(truncation)) {
    Tape base = Tape().with_word(p.anchor, p.pattern);
    consider(base);
    for (std::int64_t pos : {p.anchor - 2, p.anchor - 1, p.last() + 1, p.last() + 2}) {
      for (std::size_t x = 1; x < k; ++x) consider(base.with_symbol(pos, symbol_at(x)));
    }
  }
  return out;
}

std::optional<Collision> find_collision(const CountableShift& cgs, const std::vector<Tape>& corpus) {
  std::unordered_map<Tape, Tape, TapeHash> preimage;
  for (const auto& s : corpus) {
    Tape img = cgs.step(s);
    auto [it, inserted] = preimage.emplace(img, s);
    if (!inserted && !(it->second == s)) return Collision{it->second, s, img};
  }
  return std::nullopt;
}

AdviceTranslation::AdviceTranslation(std::shared_ptr<const AdviceOracle> advice, Codec codec)
    : advice_(std::move(advice)), codec_(codec) {
  if (!advice_) throw Error(ErrorKind::Advice, "advice translation needs an oracle");
}

std::uint64_t AdviceTranslation::digit(std::uint64_t i) const {
  if (i == 0) throw Error(ErrorKind::MalformedInput, "alpha digits are numbered from 1");
  return codec_.digit(advice_->tail_digit(i - 1));
}

Rational AdviceTranslation::truncated(std::uint64_t n) const {
  std::vector<std::uint64_t> digits;
  digits.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) digits.push_back(digit(i));
  return digit_sum(digits, codec_.base);
}

Rational AdviceTranslation::tail_bound(std::uint64_t n) const {
  return rpow(codec_.base, -static_cast<std::int64_t>(n));
}

Tape AdviceTranslation::apply(const Tape& s) const { return s.with_left_stream(0, Stream::advice_tail(advice_, 0)); }

AdviceTranslation build_advice_translation(std::shared_ptr<const AdviceOracle> advice, const Codec& codec) {
  return AdviceTranslation(std::move(advice), codec);
}

ThmBlocks thmblocks_family(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice,
                           std::uint64_t alpha_digits) {
  if (!check_injective_transition(tm).injective) {
    throw Error(ErrorKind::AssumptionViolated, "the machine's global transition function is not injective");
  }
  MachineLayout layout = asm_layout(tm);
  Codec codec = Codec::cantor(layout.alphabet().size());
  ThmBlocks out{codec, tm_advice_to_asm(tm, advice), {}, {}, {}, {}, {}, {}, {}, false, false};

  GeneralizedShift gs = tm_to_gs(tm);
  std::size_t index = 0;
  for (const auto& rule : tm.rules()) {
    for (std::size_t a = 0; a < layout.sigma_size(); ++a) {
      Word w{symbol_at(a), layout.state_symbol(rule.state), rule.read};
      for (const auto& piece : pieces_of_pair(ConcretePair{-1, w, gs.rewrite(w), gs.shift(w)}, index++, codec)) {
        out.sources.insert(out.sources.end(), piece.sources.begin(), piece.sources.end());
        out.images.insert(out.images.end(), piece.images.begin(), piece.images.end());
      }
    }
  }

  AdviceTranslation tau(advice, codec);
  out.bn_source = cylinder_rect(Cylinder{0, {layout.extra()}}, codec);
  out.btilde = cylinder_rect(Cylinder{0, {layout.state_symbol(tm.initial())}}, codec);
  out.alpha_lower = tau.truncated(alpha_digits);
  out.alpha_upper = out.alpha_lower + tau.tail_bound(alpha_digits);
  out.bn_image_enclosure =
      Rect{out.btilde.x0 + out.alpha_lower, out.btilde.x1 + out.alpha_upper, out.btilde.y0, out.btilde.y1};

  std::vector<std::pair<Rect, std::size_t>> sources;
  for (std::size_t i = 0; i < out.sources.size(); ++i) sources.emplace_back(out.sources[i], i);
  sources.emplace_back(out.bn_source, out.sources.size());
  out.sources_disjoint = sweep(sources).disjoint;

  std::vector<std::pair<Rect, std::size_t>> images;
  for (std::size_t i = 0; i < out.images.size(); ++i) images.emplace_back(out.images[i], i);
  images.emplace_back(out.bn_image_enclosure, out.images.size());
  out.images_disjoint = sweep(images).disjoint;
  return out;
}

Tape thmblocks_bn_step(const TuringMachine& tm, const AdviceTranslation& tau, const Tape& s) {
  MachineLayout layout = asm_layout(tm);
  return tau.apply(s.with_symbol(0, layout.state_symbol(tm.initial())));
}

}  // namespace hypershift
