#include "hypershift/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <thread>

#include "hypershift/classification.hpp"
#include "hypershift/compiler.hpp"
#include "hypershift/error.hpp"
#include "hypershift/flow.hpp"

namespace hypershift {

namespace {

/// Splits `items` into contiguous chunks, runs `fn` on each in its own thread
/// and returns the results in chunk order, so the output does not depend on
/// scheduling.
template <typename T, typename F>
auto parallel_chunks(const std::vector<T>& items, unsigned threads, F fn) {
  using R = decltype(fn(std::vector<T>{}));
  unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, items.size())));
  std::vector<std::vector<T>> chunks(n);
  for (std::size_t i = 0; i < items.size(); ++i) chunks[i * n / std::max<std::size_t>(1, items.size())].push_back(items[i]);
  std::vector<R> results(n);
  if (n == 1) {
    results[0] = fn(chunks[0]);
    return results;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) {
    pool.emplace_back([&, i] {
      try {
        results[i] = fn(chunks[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

Json point_json(const Point& p) { return Json{{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }

Json property(const std::string& name, bool pass) { return Json{{"name", name}, {"pass", pass}}; }

std::vector<Word> inputs_for(const MachineSpec& spec, const VerifyOptions& o) {
  return enumerate_inputs(spec.tm->alphabet(), o.max_input_size);
}

Json no_advice(const std::string& name) {
  Json p = property(name, false);
  p["witness"] = Json{{"reason", "machine has no advice"}};
  return p;
}

Json conjugacy_suite(const MachineSpec& spec, const VerifyOptions& o, const CountableShift* override_cgs) {
  Json props = Json::array();
  if (!spec.advice) {
    props.push_back(no_advice("realtime_conjugacy"));
    return props;
  }
  const TuringMachine& tm = *spec.tm;
  CountableShift compiled = override_cgs ? *override_cgs : tm_advice_to_cgs(tm, spec.advice);
  auto chunks = parallel_chunks(inputs_for(spec, o), o.threads, [&](const std::vector<Word>& part) {
    return verify_realtime_conjugacy(tm, spec.advice, compiled, part, o.step_budget);
  });
  ConjugacyReport report;
  for (auto& c : chunks) {
    for (auto& cs : c.cases) report.cases.push_back(std::move(cs));
  }
  Json p = property("realtime_conjugacy", report.ok());
  std::size_t halted = 0;
  for (const auto& c : report.cases) halted += c.halted ? 1 : 0;
  p["inputs"] = report.cases.size();
  p["halted"] = halted;
  for (const auto& c : report.cases) {
    if (c.ok()) continue;
    const Divergence& d = *c.divergence;
    Json w{{"input", tm.alphabet().display_word(c.input)},
           {"step", d.step},
           {"reason", d.reason},
           {"expected", describe_config(tm, d.expected)}};
    w["actual"] = d.actual ? Json(describe_config(tm, *d.actual)) : Json(nullptr);
    w["machine_steps"] = c.machine_steps;
    w["shift_steps"] = c.shift_steps;
    p["witness"] = w;
    break;
  }
  props.push_back(p);
  return props;
}

Json disjoint_property(const std::string& name, const DisjointnessReport& r) {
  Json p = property(name, r.disjoint);
  if (r.overlap) {
    const Rect& w = r.overlap->witness;
    p["witness"] = Json{{"first_piece", r.overlap->first_piece},
                        {"second_piece", r.overlap->second_piece},
                        {"overlap", {to_string(w.x0), to_string(w.x1), to_string(w.y0), to_string(w.y1)}}};
  }
  return p;
}

Json injectivity_suite(const MachineSpec& spec, const VerifyOptions& o) {
  Json props = Json::array();
  const TuringMachine& tm = *spec.tm;
  InjectivityReport inj = check_injective_transition(tm);
  // Informational: non-reversible machines are legitimate inputs.
  Json info = property("transition_injectivity", true);
  info["injective"] = inj.injective;
  if (inj.counterexample) {
    info["counterexample"] = {describe_config(tm, inj.counterexample->first),
                              describe_config(tm, inj.counterexample->second)};
  }
  props.push_back(info);
  if (!spec.advice) {
    props.push_back(no_advice("disjoint_images_match_brute_force"));
    return props;
  }
  CountableShift cgs = tm_advice_to_cgs(tm, spec.advice);
  BlockMap bm = cgs_to_blockmap(cgs, o.max_input_size);
  DisjointnessReport images = check_disjoint_images(bm);
  auto collision = find_collision(cgs, pair_corpus(cgs, o.max_input_size));
  // Disjoint images certify injectivity on the whole of S_P; overlapping
  // images must show up as a collision among the nearby sequences.
  Json p = property("disjoint_images_match_brute_force", images.disjoint == !collision.has_value());
  p["images_disjoint"] = images.disjoint;
  p["brute_force_injective"] = !collision.has_value();
  if (collision) {
    const Alphabet& a = cgs.alphabet();
    p["collision"] = {render_tape(collision->first, a, -6, 6), render_tape(collision->second, a, -6, 6)};
  }
  if (!p["pass"].get<bool>() && images.overlap) p["witness"] = disjoint_property("", images)["witness"];
  props.push_back(p);
  return props;
}

Json geometry_suite(const MachineSpec& spec, const VerifyOptions& o) {
  Json props = Json::array();
  if (!spec.advice) {
    props.push_back(no_advice("commutes_with_encoding"));
    return props;
  }
  const TuringMachine& tm = *spec.tm;
  CountableShift cgs = tm_advice_to_cgs(tm, spec.advice);
  BlockMap bm = cgs_to_blockmap(cgs, o.max_input_size);

  auto results = parallel_chunks(inputs_for(spec, o), o.threads, [&](const std::vector<Word>& part) {
    std::optional<Json> witness;
    std::size_t checked = 0;
    for (const auto& input : part) {
      AdviceRun run = run_with_advice(tm, *spec.advice, input_tape(input), o.orbit_steps);
      Point here = expected_section_point(tm, run.trace[0], 0, bm.codec);
      for (std::uint64_t n = 0; n + 1 < run.trace.size(); ++n) {
        Point next = expected_section_point(tm, run.trace[n + 1], n + 1, bm.codec);
        auto got = bm.apply(here);
        ++checked;
        if (!got || !(*got == next)) {
          witness = Json{{"input", tm.alphabet().display_word(input)},
                         {"step", n},
                         {"expected", point_json(next)},
                         {"actual", got ? point_json(*got) : Json(nullptr)}};
          return std::make_pair(checked, witness);
        }
        here = std::move(next);
      }
    }
    return std::make_pair(checked, witness);
  });
  Json commute = property("commutes_with_encoding", true);
  std::size_t checked = 0;
  for (const auto& [count, witness] : results) {
    checked += count;
    if (witness && commute["pass"].get<bool>()) {
      commute["pass"] = false;
      commute["witness"] = *witness;
    }
  }
  commute["steps_checked"] = checked;
  props.push_back(commute);

  Json area = property("area_preserved", true);
  for (std::size_t i = 0; i < bm.pieces.size() && area["pass"].get<bool>(); ++i) {
    const auto& piece = bm.pieces[i];
    for (std::size_t j = 0; j < piece.sources.size(); ++j) {
      if (piece.sources[j].area() != piece.images[j].area()) {
        area["pass"] = false;
        area["witness"] = Json{{"piece", i},
                               {"source_area", to_string(piece.sources[j].area())},
                               {"image_area", to_string(piece.images[j].area())}};
        break;
      }
    }
  }
  props.push_back(area);

  Json bound = property("pieces_per_pair_bound", true);
  for (std::size_t i = 0; i < bm.pairs.size(); ++i) {
    std::uint64_t h = static_cast<std::uint64_t>(std::llabs(bm.pairs[i].shift));
    std::uint64_t limit = h >= 63 ? UINT64_MAX : (std::uint64_t{1} << h);
    if (bm.pieces_per_pair[i] > limit) {
      bound["pass"] = false;
      bound["witness"] = Json{{"pair", i}, {"pieces", bm.pieces_per_pair[i]}, {"limit", limit}};
      break;
    }
  }
  bound["pairs"] = bm.pairs.size();
  bound["pieces"] = bm.pieces.size();
  props.push_back(bound);

  props.push_back(disjoint_property("disjoint_sources", check_disjoint_sources(bm)));
  return props;
}

Rational random_time(std::mt19937_64& rng, std::uint64_t span) {
  std::uniform_int_distribution<long> den_dist(1, 12);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(0, static_cast<long>(span) * den);
  Rational t(num_dist(rng), den);
  t.canonicalize();
  return t;
}

Json flow_suite(const MachineSpec& spec, const VerifyOptions& o) {
  Json props = Json::array();
  if (!spec.advice) {
    props.push_back(no_advice("section_sampling"));
    return props;
  }
  const TuringMachine& tm = *spec.tm;
  CountableShift cgs = tm_advice_to_cgs(tm, spec.advice);
  auto bm = std::make_shared<const BlockMap>(cgs_to_blockmap(cgs, o.max_input_size));
  SuspensionFlow flow{bm};
  auto inputs = inputs_for(spec, o);

  auto chunks = parallel_chunks(inputs, o.threads, [&](const std::vector<Word>& part) {
    return simulate_check(flow, tm, spec.advice, part, o.orbit_steps);
  });
  FlowReport report;
  for (auto& c : chunks) {
    for (auto& fc : c.cases) report.cases.push_back(std::move(fc));
  }
  Json sampling = property("section_sampling", report.ok());
  sampling["mode"] = report.mode;
  for (const auto& c : report.cases) {
    if (c.ok()) continue;
    const FlowMismatch& m = *c.mismatch;
    sampling["witness"] = Json{{"input", tm.alphabet().display_word(c.input)},
                               {"step", m.step},
                               {"reason", m.reason},
                               {"expected", point_json(m.expected)},
                               {"actual", m.actual ? point_json(m.actual->section) : Json(nullptr)}};
    break;
  }
  props.push_back(sampling);

  std::mt19937_64 rng(o.seed);
  Json group = property("group_law", true);
  std::size_t samples = 0;
  for (const auto& c : report.cases) {
    if (!c.ok() || c.samples.empty()) continue;
    FlowPoint p0{c.samples.front(), 0};
    std::uint64_t span = c.steps_checked;
    for (std::size_t i = 0; i < o.group_law_samples; ++i) {
      Rational t1 = random_time(rng, span) / 2;
      Rational t2 = random_time(rng, span) / 2;
      ++samples;
      FlowPoint direct = flow_at(flow, p0, t1 + t2);
      FlowPoint composed = flow_at(flow, flow_at(flow, p0, t1), t2);
      if (!(direct == composed)) {
        group["pass"] = false;
        group["witness"] = Json{{"input", tm.alphabet().display_word(c.input)},
                                {"t1", to_string(t1)},
                                {"t2", to_string(t2)}};
        break;
      }
    }
    if (!group["pass"].get<bool>()) break;
  }
  group["samples"] = samples;
  props.push_back(group);

  Json halting = property("halting_dichotomy", true);
  try {
    // Any eps_u below half the gap works; a quarter leaves delta = 3/4 gap.
    MachineLayout layout = cgs_layout(tm);
    Rect strip = cylinder_rect(Cylinder{0, {layout.state_symbol(tm.halting())}}, bm->codec);
    Rational gap = 1;
    for (const auto& piece : bm->pieces) {
      for (const auto& r : piece.sources) gap = std::min(gap, rect_distance(strip, r));
    }
    HaltingRegion region = halting_region(*bm, tm, gap / 4);
    halting["eps_u"] = to_string(region.eps_u());
    halting["delta"] = to_string(region.delta());
    std::size_t accepted = 0, looping = 0;
    for (const auto& c : report.cases) {
      if (!c.ok() || c.samples.empty()) continue;
      std::optional<std::string> why;
      if (c.halted) {
        ++accepted;
        if (!region.contains(c.samples.back())) why = "halting trajectory does not enter U";
      } else {
        ++looping;
        for (const auto& pt : c.samples) {
          if (region.distance_to_region(pt) < region.delta()) {
            why = "looping trajectory comes closer than delta";
            break;
          }
        }
      }
      if (why) {
        halting["pass"] = false;
        halting["witness"] = Json{{"input", tm.alphabet().display_word(c.input)}, {"reason", *why}};
        break;
      }
    }
    halting["halting_inputs"] = accepted;
    halting["looping_inputs"] = looping;
  } catch (const Error& e) {
    halting["pass"] = false;
    halting["witness"] = Json{{"reason", e.what()}};
  }
  props.push_back(halting);
  return props;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"conjugacy", "injectivity", "geometry", "flow"};
  return names;
}

Json run_suite(const MachineSpec& spec, const std::string& suite, const VerifyOptions& options,
               const CountableShift* cgs) {
  Json props;
  if (suite == "conjugacy") {
    props = conjugacy_suite(spec, options, cgs);
  } else if (suite == "injectivity") {
    props = injectivity_suite(spec, options);
  } else if (suite == "geometry") {
    props = geometry_suite(spec, options);
  } else if (suite == "flow") {
    props = flow_suite(spec, options);
  } else {
    throw Error(ErrorKind::MalformedInput, "unknown suite '" + suite + "'");
  }
  bool pass = std::all_of(props.begin(), props.end(), [](const Json& p) { return p["pass"].get<bool>(); });
  return Json{{"suite", suite}, {"pass", pass}, {"properties", props}};
}

Json verify_report(const MachineSpec& spec, const std::vector<std::string>& suites, const VerifyOptions& options,
                   const CountableShift* cgs) {
  for (const auto& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw Error(ErrorKind::MalformedInput, "unknown suite '" + s + "'");
    }
  }
  Json out = Json::array();
  bool pass = true;
  for (const auto& s : suites) {
    Json r = run_suite(spec, s, options, cgs);
    pass = pass && r["pass"].get<bool>();
    out.push_back(std::move(r));
  }
  return Json{{"pass", pass},
              {"max_input_size", options.max_input_size},
              {"seed", options.seed},
              {"suites", out}};
}

std::string describe_config(const TuringMachine& tm, const Config& c, std::int64_t radius) {
  return tm.state_name(c.state) + " | " + render_tape(c.tape, tm.alphabet(), -radius, radius);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* v = std::getenv("HYPERSHIFT_SEED");
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    std::uint64_t seed = std::stoull(v, &used);
    return used == std::string(v).size() ? seed : fallback;
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace hypershift
