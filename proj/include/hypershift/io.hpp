#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypershift/advice.hpp"
#include "hypershift/analog_shift.hpp"
#include "hypershift/countable_shift.hpp"
#include "hypershift/generalized_shift.hpp"
#include "hypershift/geometry.hpp"
#include "hypershift/turing_machine.hpp"

namespace hypershift {

using Json = nlohmann::ordered_json;

/// A machine document: the machine plus its optional advice.
struct MachineSpec {
  std::shared_ptr<const TuringMachine> tm;
  std::shared_ptr<const AdviceOracle> advice;
  /// The parsed document, kept so compiled artifacts can embed it verbatim.
  Json source;
};

/// Parse errors name the offending field, e.g. "delta[3].next".
MachineSpec parse_machine(const Json& doc);
MachineSpec parse_machine_text(const std::string& text);
MachineSpec load_machine(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

Json gs_to_json(const GeneralizedShift& gs);
GeneralizedShift gs_from_json(const Json& doc);

/// Families are written as {"builder": name, "params": {...}}; the
/// advice_loader builder needs the source machine document under "machine".
Json cgs_to_json(const CountableShift& cgs, const Json& machine_source);
CountableShift cgs_from_json(const Json& doc);

Json asm_to_json(const AnalogShift& a, const Json& machine_source);

Json blockmap_to_json(const BlockMap& bm);
/// Pairs, pieces and geometry of a serialized block map. Pair words are
/// stored as symbol indices since a block map carries no alphabet.
BlockMap blockmap_from_json(const Json& doc);

/// One row per source rectangle: piece, pair, shift, map, source, image.
std::string blockmap_to_csv(const BlockMap& bm);

struct SvgScene {
  std::vector<Rect> sources;
  std::vector<Rect> images;
  /// Source rectangle centre to image rectangle centre, one per piece.
  std::vector<std::pair<Point, Point>> arrows;
  std::optional<Rect> special_source;
  std::optional<Rect> special_image;
};

SvgScene blockmap_scene(const BlockMap& bm);
SvgScene thmblocks_scene(const ThmBlocks& family);

/// Deterministic SVG with coordinates printed to `digits` decimals (unit
/// square = 1000 px).
std::string render_svg(const SvgScene& scene, int digits);

}  // namespace hypershift
