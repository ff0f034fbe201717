#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypershift/analog_shift.hpp"
#include "hypershift/countable_shift.hpp"
#include "hypershift/rational.hpp"
#include "hypershift/tape.hpp"
#include "hypershift/turing_machine.hpp"

namespace hypershift {

/// Digit map of the square encoding. In Cantor mode a k-symbol alphabet uses
/// base 2k-1 with digit 2i for symbol i; in binary mode (k = 2 only) base 2
/// with digit i covers the whole unit square.
struct Codec {
  std::size_t k = 2;
  std::uint64_t base = 3;
  bool binary = false;

  static Codec cantor(std::size_t k);
  static Codec binary_square(std::size_t k);

  std::uint64_t digit(Symbol s) const { return binary ? index_of(s) : 2 * index_of(s); }
  friend bool operator==(const Codec&, const Codec&) = default;
};

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

/// A sequence viewed as a point of the square:
///   x = sum_{i>=1} digit(s_{-i}) b^{-i},  y = sum_{i>=0} digit(s_i) b^{-(i+1)}.
struct CantorPoint {
  Tape sequence;
  Codec codec;
};

CantorPoint encode_point(const Tape& s, const Codec& codec);

/// Coordinates with certified bounds: the true value lies in
/// [x, x + x_error] (likewise for y). A side backed by a finite stream is
/// summed exactly and has error 0; otherwise `ndigits` digits are summed and
/// the error is b^{-ndigits}.
struct Coordinates {
  Point point;
  Rational x_error;
  Rational y_error;

  bool exact() const { return x_error == 0 && y_error == 0; }
};

Coordinates point_coords(const CantorPoint& p, std::uint64_t ndigits = 64);

/// Exact coordinates of a compactly supported sequence.
Point exact_point(const Tape& s, const Codec& codec);

/// Shift by r (left for r > 0). One left shift sends (x, y) to
/// ((d + x)/b, b y - d) where d is the digit at position 0; a right shift
/// undoes this with the digit at position -1.
CantorPoint baker_shift(const CantorPoint& p, std::int64_t r);
Point baker_shift_coords(const Point& p, std::int64_t r, const Tape& s, const Codec& codec);

struct Rect {
  Rational x0, x1, y0, y1;

  Rational area() const { return (x1 - x0) * (y1 - y0); }
  /// Half-open membership [x0, x1) x [y0, y1).
  bool contains(const Point& p) const { return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1; }
  /// Interiors intersect.
  bool overlaps(const Rect& o) const { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
  Rect intersection(const Rect& o) const;

  friend bool operator==(const Rect& a, const Rect& b) {
    return a.x0 == b.x0 && a.x1 == b.x1 && a.y0 == b.y0 && a.y1 == b.y1;
  }
};

/// Sequences reading `word` at lo..lo+|word|-1, where that range meets
/// {-1, 0} or is empty; such a cylinder is a single rectangle.
struct Cylinder {
  std::int64_t lo = 0;
  Word word;

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(word.size()) - 1; }
  bool touches_dot() const { return word.empty() || (lo <= 0 && hi() >= -1); }
  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

Rect cylinder_rect(const Cylinder& c, const Codec& codec);

/// Block of a pair whose footprint meets {-1, 0}; MalformedInput otherwise.
Rect block_of_pair(const ConcretePair& pair, const Codec& codec);

/// The cylinders making up the set of sequences coinciding with a pair: the
/// footprint is padded to reach the dot, one cylinder per padding word.
std::vector<Cylinder> pair_cylinders(const ConcretePair& pair, std::size_t k);

/// x -> sx x + u, y -> sy y + v
struct Affine {
  Rational sx, u, sy, v;

  Point operator()(const Point& p) const { return Point{sx * p.x + u, sy * p.y + v}; }
  friend bool operator==(const Affine& a, const Affine& b) {
    return a.sx == b.sx && a.u == b.u && a.sy == b.sy && a.v == b.v;
  }
};

/// One affine branch of the block map for a single pair. The source
/// rectangles are pairwise disjoint and are carried onto the image
/// rectangles of the same index.
struct BlockPiece {
  std::size_t pair_index = 0;
  std::int64_t shift = 0;
  Affine map;
  std::vector<Cylinder> source_cylinders;
  std::vector<Cylinder> image_cylinders;
  std::vector<Rect> sources;
  std::vector<Rect> images;
};

/// Countable piecewise affine map truncated to the pairs of level <=
/// truncation.
struct BlockMap {
  Codec codec;
  std::uint64_t truncation = 0;
  std::vector<ConcretePair> pairs;
  std::vector<BlockPiece> pieces;
  std::vector<std::size_t> pieces_per_pair;

  /// nullopt outside every source rectangle.
  std::optional<Point> apply(const Point& p) const;
  /// Index of the piece whose source holds p.
  std::optional<std::size_t> locate(const Point& p) const;
};

/// Translation of the pattern block onto the rewrite block followed by |H|
/// Baker steps, split whenever a step needs a digit the rewrite does not fix.
std::vector<BlockPiece> pieces_of_pair(const ConcretePair& pair, std::size_t pair_index, const Codec& codec);

BlockMap pairs_to_blockmap(const std::vector<ConcretePair>& pairs, const Codec& codec, std::uint64_t truncation = 0);
BlockMap cgs_to_blockmap(const CountableShift& cgs, std::uint64_t truncation);

/// The same combinatorics with the binary square digits.
BlockMap binary_square_map(const BlockMap& bm);

struct Overlap {
  std::size_t first_piece = 0;
  std::size_t second_piece = 0;
  Rect witness;
};

struct DisjointnessReport {
  bool disjoint = true;
  std::optional<Overlap> overlap;
};

DisjointnessReport check_disjoint_images(const BlockMap& bm);
DisjointnessReport check_disjoint_sources(const BlockMap& bm);

/// Compactly supported members of S_P near each pair of level <= truncation:
/// the bare pattern and every variant with one extra symbol within two cells
/// of the footprint.
std::vector<Tape> pair_corpus(const CountableShift& cgs, std::uint64_t truncation);

struct Collision {
  Tape first;
  Tape second;
  Tape image;
};

/// Brute-force injectivity of the shift on the given members of S_P.
std::optional<Collision> find_collision(const CountableShift& cgs, const std::vector<Tape>& corpus);

/// The advice translation tau(x, y) = (x + alpha, y), alpha being the point
/// whose x-digits are those of a_inf.
class AdviceTranslation {
 public:
  AdviceTranslation(std::shared_ptr<const AdviceOracle> advice, Codec codec);

  /// i-th base-b digit of alpha, i >= 1.
  std::uint64_t digit(std::uint64_t i) const;
  /// Sum of the first n digits.
  Rational truncated(std::uint64_t n) const;
  Rational tail_bound(std::uint64_t n) const;

  /// Sequence-level image: the left half becomes a_inf. Exact on points with
  /// a blank left half, which is where tau is used.
  Tape apply(const Tape& s) const;

  const std::shared_ptr<const AdviceOracle>& advice() const { return advice_; }
  const Codec& codec() const { return codec_; }

 private:
  std::shared_ptr<const AdviceOracle> advice_;
  Codec codec_;
};

AdviceTranslation build_advice_translation(std::shared_ptr<const AdviceOracle> advice, const Codec& codec);

/// The block families of the analog shift built from a reversible machine
/// whose initial state q1 is not in the image of delta: the blocks of the
/// machine rules (halting blocks omitted) and their images, plus B_N (the
/// loading-state strip) with image B'_N = tau(B~), B~ being the q1 strip.
/// Since alpha is only known digit by digit, B'_N is held as the enclosure
/// [alpha_n, 1 + alpha_n + b^{-n}] x strip(q1) for n = alpha_digits.
struct ThmBlocks {
  Codec codec;
  AnalogShift shift;
  std::vector<Rect> sources;
  std::vector<Rect> images;
  Rect bn_source;
  Rect btilde;
  Rect bn_image_enclosure;
  Rational alpha_lower;
  Rational alpha_upper;
  bool sources_disjoint = false;
  bool images_disjoint = false;
};

ThmBlocks thmblocks_family(const TuringMachine& tm, std::shared_ptr<const AdviceOracle> advice,
                           std::uint64_t alpha_digits = 40);

/// B_N -> B~ (loading state replaced by q1) followed by tau, at sequence level.
Tape thmblocks_bn_step(const TuringMachine& tm, const AdviceTranslation& tau, const Tape& s);

}  // namespace hypershift
