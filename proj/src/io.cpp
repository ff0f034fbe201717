#include "hypershift/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hypershift/compiler.hpp"
#include "hypershift/error.hpp"

namespace hypershift {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, where + ": " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) parse_fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(where, "missing field '" + key + "'");
  return *it;
}

std::string string_field(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) parse_fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

std::int64_t int_field(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_number_integer()) parse_fail(where + "." + key, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<std::string> string_array(const Json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) parse_fail(where + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

/// Runs `fn`, prefixing any non-parse library error with the field path.
template <typename F>
auto at_field(const std::string& where, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    parse_fail(where, e.what());
  }
}

Alphabet alphabet_from(const Json& doc, const std::string& where) {
  auto names = string_array(field(doc, "alphabet", where), where + ".alphabet");
  std::string blank = string_field(doc, "blank", where);
  return at_field(where + ".alphabet", [&] { return Alphabet(names, blank); });
}

std::shared_ptr<const AdviceOracle> parse_advice(const Json& adv, const Alphabet& sigma) {
  const std::string where = "advice";
  const Json& pj = field(adv, "p", where);
  if (!pj.is_array()) parse_fail("advice.p", "expected an array of non-negative integers");
  std::vector<std::uint64_t> coeffs;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    if (!pj[i].is_number_unsigned() && !(pj[i].is_number_integer() && pj[i].get<std::int64_t>() >= 0)) {
      parse_fail("advice.p[" + std::to_string(i) + "]", "expected a non-negative integer");
    }
    coeffs.push_back(pj[i].get<std::uint64_t>());
  }
  Polynomial p = at_field("advice.p", [&] { return Polynomial(coeffs); });
  bool has_table = adv.contains("table");
  bool has_gen = adv.contains("generator");
  if (has_table == has_gen) parse_fail(where, "exactly one of 'table' or 'generator' is required");
  if (has_gen) {
    std::string name = string_field(adv, "generator", where);
    if (!is_builtin_generator(name)) parse_fail("advice.generator", "unknown generator '" + name + "'");
    return std::make_shared<const AdviceOracle>(p, name, builtin_generator(name, symbol_at(1)));
  }
  const Json& table = adv["table"];
  if (!table.is_object()) parse_fail("advice.table", "expected an object keyed by n");
  std::map<std::uint64_t, Word> words;
  for (auto it = table.begin(); it != table.end(); ++it) {
    std::string key = it.key();
    std::string where_row = "advice.table[\"" + key + "\"]";
    std::uint64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoull(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      parse_fail(where_row, "key is not a non-negative integer");
    }
    if (!it.value().is_string()) parse_fail(where_row, "expected a word");
    std::string text = it.value().get<std::string>();
    words[n] = at_field(where_row, [&] { return sigma.parse_word(text); });
  }
  return at_field("advice.table", [&] { return std::make_shared<const AdviceOracle>(p, std::move(words)); });
}

std::string rat(const Rational& r) { return to_string(r); }

Rational rat_from(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<std::int64_t>()));
  if (!v.is_string()) parse_fail(where, "expected a rational string");
  return at_field(where, [&] { return parse_rational(v.get<std::string>()); });
}

Json symbol_indices(const Word& w) {
  Json out = Json::array();
  for (Symbol s : w) out.push_back(index_of(s));
  return out;
}

Word symbols_from(const Json& v, std::size_t k, const std::string& where) {
  if (!v.is_array()) parse_fail(where, "expected an array of symbol indices");
  Word w;
  for (const auto& e : v) {
    if (!e.is_number_unsigned() || e.get<std::size_t>() >= k) parse_fail(where, "symbol index out of range");
    w.push_back(symbol_at(e.get<std::size_t>()));
  }
  return w;
}

Json rect_json(const Rect& r) { return Json::array({rat(r.x0), rat(r.x1), rat(r.y0), rat(r.y1)}); }

Rect rect_from(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) parse_fail(where, "expected [x0, x1, y0, y1]");
  return Rect{rat_from(v[0], where), rat_from(v[1], where), rat_from(v[2], where), rat_from(v[3], where)};
}

Json stream_json(const Stream& s, const Alphabet& a) {
  return std::visit(
      [&](const auto& k) -> Json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, BlankStream>) {
          return Json{{"stream", "blank"}};
        } else if constexpr (std::is_same_v<K, AdviceTailStream>) {
          return Json{{"stream", "advice_tail"}, {"skip", k.skip}};
        } else {
          return Json{{"stream", "literal"}, {"word", a.format_word(k.word)}};
        }
      },
      s.kind());
}

using FamilyBuilder = std::function<std::shared_ptr<const PairFamily>(const Json& params, const Alphabet&)>;

const std::map<std::string, FamilyBuilder>& family_registry() {
  static const std::map<std::string, FamilyBuilder> registry{
      {"advice_loader",
       [](const Json& params, const Alphabet& alphabet) -> std::shared_ptr<const PairFamily> {
         MachineSpec spec = parse_machine(field(params, "machine", "families.params"));
         if (!spec.advice) parse_fail("families.params.machine", "advice_loader needs a machine with advice");
         if (!(cgs_layout(*spec.tm).alphabet() == alphabet)) {
           parse_fail("families.params.machine", "machine layout does not match the shift alphabet");
         }
         return std::make_shared<AdviceLoaderFamily>(*spec.tm, spec.advice);
       }},
  };
  return registry;
}

}  // namespace

MachineSpec parse_machine(const Json& doc) {
  if (!doc.is_object()) parse_fail("machine", "expected a JSON object");
  auto states = string_array(field(doc, "states", "machine"), "states");
  std::string initial = string_field(doc, "initial", "machine");
  std::string halting = string_field(doc, "halting", "machine");
  Alphabet sigma = alphabet_from(doc, "machine");

  auto state_index = [&](const std::string& name, const std::string& where) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] == name) return state_at(i);
    }
    parse_fail(where, "unknown state '" + name + "'");
  };

  const Json& delta = field(doc, "delta", "machine");
  if (!delta.is_array()) parse_fail("delta", "expected an array of rows");
  std::vector<TransitionRule> rules;
  for (std::size_t i = 0; i < delta.size(); ++i) {
    std::string row = "delta[" + std::to_string(i) + "]";
    const Json& r = delta[i];
    TransitionRule rule{};
    rule.state = state_index(string_field(r, "state", row), row + ".state");
    std::string read = string_field(r, "read", row);
    rule.read = at_field(row + ".read", [&] { return sigma.symbol(read); });
    rule.result.next = state_index(string_field(r, "next", row), row + ".next");
    std::string write = string_field(r, "write", row);
    rule.result.write = at_field(row + ".write", [&] { return sigma.symbol(write); });
    std::int64_t move = int_field(r, "move", row);
    if (move < -1 || move > 1) parse_fail(row + ".move", "expected -1, 0 or +1");
    rule.result.move = static_cast<Move>(move);
    rules.push_back(rule);
  }

  MachineSpec spec;
  spec.tm = at_field("machine", [&] {
    return std::make_shared<const TuringMachine>(states, initial, halting, sigma, rules);
  });
  if (doc.contains("advice") && !doc["advice"].is_null()) spec.advice = parse_advice(doc["advice"], sigma);
  spec.source = doc;
  return spec;
}

MachineSpec parse_machine_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail("machine", e.what());
  }
  return parse_machine(doc);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
  out << contents;
}

MachineSpec load_machine(const std::string& path) { return parse_machine_text(read_file(path)); }

Json gs_to_json(const GeneralizedShift& gs) {
  const Alphabet& a = gs.alphabet();
  Json table = Json::object();
  for (std::size_t c = 0; c < gs.word_count(); ++c) {
    Word w = gs.word(c);
    if (gs.rewrite_at(c) == w && gs.shift_at(c) == 0) continue;
    table[a.format_word(w)] = Json{{"rewrite", a.format_word(gs.rewrite_at(c))}, {"shift", gs.shift_at(c)}};
  }
  return Json{{"kind", "gs"},
              {"alphabet", a.names()},
              {"blank", a.blank_name()},
              {"window", {{"lo", gs.window_lo()}, {"length", gs.window_length()}}},
              {"table", table}};
}

GeneralizedShift gs_from_json(const Json& doc) {
  if (string_field(doc, "kind", "shift") != "gs") parse_fail("shift.kind", "expected \"gs\"");
  Alphabet a = alphabet_from(doc, "shift");
  const Json& win = field(doc, "window", "shift");
  GeneralizedShift gs(a, int_field(win, "lo", "window"), static_cast<std::size_t>(int_field(win, "length", "window")));
  const Json& table = field(doc, "table", "shift");
  for (auto it = table.begin(); it != table.end(); ++it) {
    std::string where = "table[\"" + it.key() + "\"]";
    std::string key = it.key();
    std::string rewrite = string_field(it.value(), "rewrite", where);
    std::int64_t shift = int_field(it.value(), "shift", where);
    at_field(where, [&] {
      gs.set_rule(a.parse_word(key), a.parse_word(rewrite), shift);
      return 0;
    });
  }
  return gs;
}

Json cgs_to_json(const CountableShift& cgs, const Json& machine_source) {
  const Alphabet& a = cgs.alphabet();
  Json pairs = Json::array();
  for (const auto& p : cgs.concrete()) {
    pairs.push_back(Json{{"anchor", p.anchor},
                         {"pattern", a.format_word(p.pattern)},
                         {"rewrite", a.format_word(p.rewrite)},
                         {"shift", p.shift}});
  }
  Json families = Json::array();
  for (const auto& f : cgs.families()) {
    Json params = Json::object();
    for (const auto& [k, v] : f->params()) params[k] = v;
    params["machine"] = machine_source;
    families.push_back(Json{{"builder", f->builder()}, {"params", params}});
  }
  return Json{{"kind", "cgs"},
              {"alphabet", a.names()},
              {"blank", a.blank_name()},
              {"pairs", pairs},
              {"families", families}};
}

CountableShift cgs_from_json(const Json& doc) {
  if (string_field(doc, "kind", "shift") != "cgs") parse_fail("shift.kind", "expected \"cgs\"");
  Alphabet a = alphabet_from(doc, "shift");
  CountableShift cgs(a);
  const Json& pairs = field(doc, "pairs", "shift");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::string where = "pairs[" + std::to_string(i) + "]";
    const Json& p = pairs[i];
    std::int64_t anchor = int_field(p, "anchor", where);
    std::string pattern = string_field(p, "pattern", where);
    std::string rewrite = string_field(p, "rewrite", where);
    std::int64_t shift = int_field(p, "shift", where);
    at_field(where, [&] {
      cgs.add_pair(ConcretePair{anchor, a.parse_word(pattern), a.parse_word(rewrite), shift});
      return 0;
    });
  }
  if (doc.contains("families")) {
    const Json& fams = doc["families"];
    for (std::size_t i = 0; i < fams.size(); ++i) {
      std::string where = "families[" + std::to_string(i) + "]";
      std::string builder = string_field(fams[i], "builder", where);
      auto it = family_registry().find(builder);
      if (it == family_registry().end()) parse_fail(where + ".builder", "unknown builder '" + builder + "'");
      cgs.add_family(it->second(field(fams[i], "params", where), a));
    }
  }
  return cgs;
}

Json asm_to_json(const AnalogShift& sh, const Json& machine_source) {
  const Alphabet& a = sh.alphabet();
  std::map<std::string, std::int64_t> shifts;
  for (const auto& [w, k] : sh.shift_table()) shifts[a.format_word(w)] = k;
  std::map<std::string, Json> effects;
  for (const auto& [w, e] : sh.effect_table()) {
    if (const auto* finite = std::get_if<Word>(&e)) {
      effects[a.format_word(w)] = Json{{"word", a.format_word(*finite)}};
    } else {
      const auto& inf = std::get<InfiniteEffect>(e);
      effects[a.format_word(w)] =
          Json{{"left", stream_json(inf.left, a)}, {"tail_start", inf.tail_start}, {"tail", a.format_word(inf.tail)}};
    }
  }
  Json shift_json = Json::object();
  for (const auto& [k, v] : shifts) shift_json[k] = v;
  Json effect_json = Json::object();
  for (const auto& [k, v] : effects) effect_json[k] = v;
  return Json{{"kind", "asm"},
              {"alphabet", a.names()},
              {"blank", a.blank_name()},
              {"df", {{"lo", sh.df().lo}, {"length", sh.df().length}}},
              {"dg", {{"lo", sh.dg().lo}, {"length", sh.dg().length}}},
              {"shift", shift_json},
              {"effect", effect_json},
              {"machine", machine_source}};
}

Json blockmap_to_json(const BlockMap& bm) {
  Json pieces = Json::array();
  for (const auto& p : bm.pieces) {
    Json sources = Json::array();
    for (const auto& r : p.sources) sources.push_back(rect_json(r));
    Json images = Json::array();
    for (const auto& r : p.images) images.push_back(rect_json(r));
    pieces.push_back(Json{{"pair", p.pair_index},
                          {"shift", p.shift},
                          {"map", {{"sx", rat(p.map.sx)}, {"u", rat(p.map.u)}, {"sy", rat(p.map.sy)}, {"v", rat(p.map.v)}}},
                          {"sources", sources},
                          {"images", images}});
  }
  Json pairs = Json::array();
  for (const auto& p : bm.pairs) {
    pairs.push_back(Json{{"anchor", p.anchor},
                         {"pattern", symbol_indices(p.pattern)},
                         {"rewrite", symbol_indices(p.rewrite)},
                         {"shift", p.shift}});
  }
  return Json{{"kind", "blockmap"},
              {"mode", bm.codec.binary ? "binary" : "cantor"},
              {"k", bm.codec.k},
              {"base", bm.codec.base},
              {"truncation", bm.truncation},
              {"pairs", pairs},
              {"pieces_per_pair", bm.pieces_per_pair},
              {"pieces", pieces}};
}

BlockMap blockmap_from_json(const Json& doc) {
  if (string_field(doc, "kind", "blockmap") != "blockmap") parse_fail("blockmap.kind", "expected \"blockmap\"");
  BlockMap bm;
  std::string mode = string_field(doc, "mode", "blockmap");
  auto k = static_cast<std::size_t>(int_field(doc, "k", "blockmap"));
  bm.codec = at_field("blockmap.mode", [&] { return mode == "binary" ? Codec::binary_square(k) : Codec::cantor(k); });
  bm.truncation = static_cast<std::uint64_t>(int_field(doc, "truncation", "blockmap"));
  if (doc.contains("pairs")) {
    const Json& pairs = doc["pairs"];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      std::string where = "pairs[" + std::to_string(i) + "]";
      bm.pairs.push_back(ConcretePair{int_field(pairs[i], "anchor", where),
                                      symbols_from(field(pairs[i], "pattern", where), bm.codec.k, where + ".pattern"),
                                      symbols_from(field(pairs[i], "rewrite", where), bm.codec.k, where + ".rewrite"),
                                      int_field(pairs[i], "shift", where)});
    }
  }
  const Json& per = field(doc, "pieces_per_pair", "blockmap");
  for (const auto& v : per) bm.pieces_per_pair.push_back(v.get<std::size_t>());
  const Json& pieces = field(doc, "pieces", "blockmap");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::string where = "pieces[" + std::to_string(i) + "]";
    const Json& pj = pieces[i];
    BlockPiece p;
    p.pair_index = static_cast<std::size_t>(int_field(pj, "pair", where));
    p.shift = int_field(pj, "shift", where);
    const Json& m = field(pj, "map", where);
    p.map = Affine{rat_from(field(m, "sx", where), where + ".map.sx"), rat_from(field(m, "u", where), where + ".map.u"),
                   rat_from(field(m, "sy", where), where + ".map.sy"), rat_from(field(m, "v", where), where + ".map.v")};
    const Json& sources = field(pj, "sources", where);
    for (std::size_t j = 0; j < sources.size(); ++j) {
      p.sources.push_back(rect_from(sources[j], where + ".sources[" + std::to_string(j) + "]"));
    }
    const Json& images = field(pj, "images", where);
    for (std::size_t j = 0; j < images.size(); ++j) {
      p.images.push_back(rect_from(images[j], where + ".images[" + std::to_string(j) + "]"));
    }
    if (p.sources.size() != p.images.size()) parse_fail(where, "sources and images differ in number");
    bm.pieces.push_back(std::move(p));
  }
  return bm;
}

std::string blockmap_to_csv(const BlockMap& bm) {
  std::ostringstream out;
  out << "piece,pair,shift,sx,u,sy,v,src_x0,src_x1,src_y0,src_y1,img_x0,img_x1,img_y0,img_y1\n";
  for (std::size_t i = 0; i < bm.pieces.size(); ++i) {
    const auto& p = bm.pieces[i];
    for (std::size_t j = 0; j < p.sources.size(); ++j) {
      const Rect& s = p.sources[j];
      const Rect& m = p.images[j];
      out << i << ',' << p.pair_index << ',' << p.shift << ',' << rat(p.map.sx) << ',' << rat(p.map.u) << ','
          << rat(p.map.sy) << ',' << rat(p.map.v) << ',' << rat(s.x0) << ',' << rat(s.x1) << ',' << rat(s.y0) << ','
          << rat(s.y1) << ',' << rat(m.x0) << ',' << rat(m.x1) << ',' << rat(m.y0) << ',' << rat(m.y1) << '\n';
    }
  }
  return out.str();
}

SvgScene blockmap_scene(const BlockMap& bm) {
  SvgScene scene;
  for (const auto& p : bm.pieces) {
    for (std::size_t j = 0; j < p.sources.size(); ++j) {
      scene.sources.push_back(p.sources[j]);
      scene.images.push_back(p.images[j]);
    }
    if (!p.sources.empty()) {
      const Rect& s = p.sources.front();
      const Rect& m = p.images.front();
      scene.arrows.emplace_back(Point{(s.x0 + s.x1) / 2, (s.y0 + s.y1) / 2}, Point{(m.x0 + m.x1) / 2, (m.y0 + m.y1) / 2});
    }
  }
  return scene;
}

SvgScene thmblocks_scene(const ThmBlocks& family) {
  SvgScene scene;
  scene.sources = family.sources;
  scene.images = family.images;
  scene.special_source = family.bn_source;
  scene.special_image = family.bn_image_enclosure;
  return scene;
}

std::string render_svg(const SvgScene& scene, int digits) {
  if (digits < 1) throw Error(ErrorKind::MalformedInput, "--digits must be at least 1");
  double minx = 0, maxx = 1, miny = 0, maxy = 1;
  auto grow = [&](const Rect& r) {
    minx = std::min(minx, to_double(r.x0));
    maxx = std::max(maxx, to_double(r.x1));
    miny = std::min(miny, to_double(r.y0));
    maxy = std::max(maxy, to_double(r.y1));
  };
  for (const auto& r : scene.sources) grow(r);
  for (const auto& r : scene.images) grow(r);
  if (scene.special_source) grow(*scene.special_source);
  if (scene.special_image) grow(*scene.special_image);

  const double scale = 1000.0;
  const double margin = 20.0;
  auto num = [&](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return std::string(buf);
  };
  auto px = [&](double x) { return num((x - minx) * scale + margin); };
  auto py = [&](double y) { return num((maxy - y) * scale + margin); };
  auto rect = [&](const Rect& r, const std::string& style) {
    double x0 = to_double(r.x0), x1 = to_double(r.x1), y0 = to_double(r.y0), y1 = to_double(r.y1);
    return "  <rect x=\"" + px(x0) + "\" y=\"" + py(y1) + "\" width=\"" + num((x1 - x0) * scale) + "\" height=\"" +
           num((y1 - y0) * scale) + "\" " + style + "/>\n";
  };

  std::ostringstream out;
  double w = (maxx - minx) * scale + 2 * margin;
  double h = (maxy - miny) * scale + 2 * margin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
      << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
  out << "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
         "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#444\"/></marker></defs>\n";
  out << rect(Rect{0, 1, 0, 1}, "fill=\"none\" stroke=\"#000\" stroke-width=\"2\"");
  out << "  <g id=\"images\">\n";
  for (const auto& r : scene.images) out << rect(r, "fill=\"#f4a259\" fill-opacity=\"0.45\" stroke=\"none\"");
  if (scene.special_image) out << rect(*scene.special_image, "fill=\"#bc4b51\" fill-opacity=\"0.45\" stroke=\"none\"");
  out << "  </g>\n  <g id=\"sources\">\n";
  for (const auto& r : scene.sources) out << rect(r, "fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1\"");
  if (scene.special_source) out << rect(*scene.special_source, "fill=\"none\" stroke=\"#bc4b51\" stroke-width=\"2\"");
  out << "  </g>\n  <g id=\"arrows\">\n";
  for (const auto& [a, b] : scene.arrows) {
    out << "  <line x1=\"" << px(to_double(a.x)) << "\" y1=\"" << py(to_double(a.y)) << "\" x2=\"" << px(to_double(b.x))
        << "\" y2=\"" << py(to_double(b.y)) << "\" stroke=\"#444\" stroke-width=\"1\" marker-end=\"url(#arrow)\"/>\n";
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

}  // namespace hypershift
