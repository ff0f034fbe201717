// Command-line front end: compile, run, verify, flow and render.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypershift/classification.hpp"
#include "hypershift/compiler.hpp"
#include "hypershift/error.hpp"
#include "hypershift/flow.hpp"
#include "hypershift/io.hpp"
#include "hypershift/verify.hpp"

using namespace hypershift;

namespace {

constexpr int kExitHalted = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

std::string kind_of(const Json& doc) {
  if (doc.is_object() && doc.contains("kind") && doc["kind"].is_string()) return doc["kind"].get<std::string>();
  return "machine";
}

std::shared_ptr<const AdviceOracle> require_advice(const MachineSpec& spec) {
  if (!spec.advice) throw Error(ErrorKind::MalformedInput, "this target needs a machine with an 'advice' field");
  return spec.advice;
}

struct CompileArgs {
  std::string machine;
  std::string target = "cgs";
  std::uint64_t truncation = 3;
  std::string out;
  std::string csv;
  std::string svg;
  int digits = 6;
};

int cmd_compile(const CompileArgs& a) {
  MachineSpec spec = load_machine(a.machine);
  const TuringMachine& tm = *spec.tm;
  if (a.target == "gs") {
    Json doc = gs_to_json(tm_to_gs(tm));
    doc["machine"] = spec.source;
    emit(a.out, dump(doc));
  } else if (a.target == "cgs") {
    emit(a.out, dump(cgs_to_json(tm_advice_to_cgs(tm, require_advice(spec)), spec.source)));
  } else if (a.target == "asm") {
    emit(a.out, dump(asm_to_json(tm_advice_to_asm(tm, require_advice(spec)), spec.source)));
  } else {
    BlockMap bm = cgs_to_blockmap(tm_advice_to_cgs(tm, require_advice(spec)), a.truncation);
    emit(a.out, dump(blockmap_to_json(bm)));
    if (!a.csv.empty()) write_file(a.csv, blockmap_to_csv(bm));
    if (!a.svg.empty()) write_file(a.svg, render_svg(blockmap_scene(bm), a.digits));
  }
  return kExitHalted;
}

struct RunArgs {
  std::string spec;
  std::string input;
  std::uint64_t steps = 1000;
  std::string trace;
  bool with_advice = false;
  std::int64_t window = 8;
};

int cmd_run(const RunArgs& a) {
  Json doc = load_json(a.spec);
  std::string kind = kind_of(doc);
  std::ostringstream tsv;
  tsv << "step\tstate\twindow\n";
  bool halted = false;

  if (kind == "machine") {
    MachineSpec spec = parse_machine(doc);
    const TuringMachine& tm = *spec.tm;
    Tape input = input_tape(tm.alphabet().parse_word(a.input));
    std::vector<Config> trace;
    if (a.with_advice) {
      AdviceRun run = run_with_advice(tm, *require_advice(spec), input, a.steps);
      trace = std::move(run.trace);
      halted = run.halted;
    } else {
      input_size(input);
      Config c{tm.initial(), input};
      trace.push_back(c);
      while (c.state != tm.halting() && trace.size() <= a.steps) {
        c = tm_step(tm, c);
        trace.push_back(c);
      }
      halted = c.state == tm.halting();
    }
    for (std::size_t n = 0; n < trace.size(); ++n) {
      tsv << n << '\t' << tm.state_name(trace[n].state) << '\t'
          << render_tape(trace[n].tape, tm.alphabet(), -a.window, a.window) << '\n';
    }
  } else if (kind == "gs" || kind == "cgs") {
    // A shift has no halting state; a run stops once the sequence is fixed.
    std::optional<GeneralizedShift> gs;
    std::optional<CountableShift> cgs;
    if (kind == "gs") {
      gs.emplace(gs_from_json(doc));
    } else {
      cgs.emplace(cgs_from_json(doc));
    }
    const Alphabet& alphabet = gs ? gs->alphabet() : cgs->alphabet();
    Tape s = Tape::from_word(alphabet.parse_word(a.input));
    for (std::uint64_t n = 0;; ++n) {
      tsv << n << "\t-\t" << render_tape(s, alphabet, -a.window, a.window) << '\n';
      if (n == a.steps) break;
      Tape next = gs ? gs->step(s) : cgs->step(s);
      if (next == s) {
        halted = true;
        break;
      }
      s = std::move(next);
    }
  } else {
    throw Error(ErrorKind::MalformedInput, "cannot run a spec of kind '" + kind + "'");
  }
  emit(a.trace, tsv.str());
  if (!a.trace.empty()) std::cerr << (halted ? "halted" : "budget exhausted") << "\n";
  return halted ? kExitHalted : kExitBudget;
}

struct VerifyArgs {
  std::string machine;
  std::vector<std::string> suites{"all"};
  VerifyOptions options;
  std::string against;
  std::string report;
};

int cmd_verify(VerifyArgs a) {
  MachineSpec spec = load_machine(a.machine);
  std::vector<std::string> suites;
  for (const auto& entry : a.suites) {
    std::stringstream ss(entry);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty() || name == "none") continue;
      if (name == "all") {
        suites.insert(suites.end(), suite_names().begin(), suite_names().end());
      } else {
        suites.push_back(name);
      }
    }
  }
  a.options.seed = seed_from_env(a.options.seed);
  std::optional<CountableShift> cgs;
  if (!a.against.empty()) cgs.emplace(cgs_from_json(load_json(a.against)));
  Json report = verify_report(spec, suites, a.options, cgs ? &*cgs : nullptr);
  emit(a.report, dump(report));
  return report["pass"].get<bool>() ? 0 : 1;
}

struct FlowArgs {
  std::string machine;
  std::string input;
  std::uint64_t n_max = 64;
  std::string speed = "1";
  std::optional<std::uint64_t> truncation;
  std::string eps_u;
  std::string out;
  std::string csv;
};

int cmd_flow(const FlowArgs& a) {
  MachineSpec spec = load_machine(a.machine);
  const TuringMachine& tm = *spec.tm;
  Word input = tm.alphabet().parse_word(a.input);
  std::uint64_t truncation = a.truncation.value_or(input.empty() ? 0 : input.size() - 1);
  CountableShift cgs = tm_advice_to_cgs(tm, require_advice(spec));
  auto bm = std::make_shared<const BlockMap>(cgs_to_blockmap(cgs, truncation));
  SuspensionFlow flow{bm, FirstIntegral::constant(parse_rational(a.speed))};
  FlowReport report = simulate_check(flow, tm, spec.advice, {input}, a.n_max);
  const FlowCase& c = report.cases.front();

  Json samples = Json::array();
  for (std::size_t n = 0; n < c.samples.size(); ++n) {
    samples.push_back(Json{{"n", n},
                           {"t", to_string(c.k_s * Rational(static_cast<unsigned long>(n)))},
                           {"x", to_string(c.samples[n].x)},
                           {"y", to_string(c.samples[n].y)}});
  }
  Json doc{{"mode", report.mode},
           {"input", a.input},
           {"speed", flow.speed.name()},
           {"k_s", to_string(c.k_s)},
           {"halted", c.halted},
           {"pass", c.ok()},
           {"samples", samples}};
  if (c.mismatch) doc["mismatch"] = Json{{"step", c.mismatch->step}, {"reason", c.mismatch->reason}};
  std::optional<HaltingRegion> region;
  if (!a.eps_u.empty()) {
    region = halting_region(*bm, tm, parse_rational(a.eps_u));
    Json distances = Json::array();
    for (const auto& p : c.samples) distances.push_back(to_string(region->distance_to_region(p)));
    doc["halting_region"] = Json{{"eps_u", to_string(region->eps_u())},
                                 {"gap", to_string(region->gap())},
                                 {"delta", to_string(region->delta())},
                                 {"distances", distances}};
  }
  emit(a.out, dump(doc));
  if (!a.csv.empty()) {
    AdviceRun run = run_with_advice(tm, *spec.advice, input_tape(input), a.n_max);
    std::ostringstream csv;
    csv << "step,t,config,x,y,z,distance_to_u\n";
    for (std::size_t n = 0; n < c.samples.size(); ++n) {
      csv << n << ',' << to_string(c.k_s * Rational(static_cast<unsigned long>(n))) << ",\""
          << describe_config(tm, run.trace[n]) << "\"," << to_string(c.samples[n].x) << ','
          << to_string(c.samples[n].y) << ",0/1," << (region ? to_string(region->distance_to_region(c.samples[n])) : "")
          << '\n';
    }
    write_file(a.csv, csv.str());
  }
  return c.ok() ? 0 : 1;
}

struct RenderArgs {
  std::string spec;
  int digits = 6;
  std::string out;
  bool binary = false;
  std::uint64_t truncation = 3;
};

int cmd_render(const RenderArgs& a) {
  Json doc = load_json(a.spec);
  std::string kind = kind_of(doc);
  SvgScene scene;
  if (kind == "machine") {
    MachineSpec spec = parse_machine(doc);
    scene = thmblocks_scene(thmblocks_family(*spec.tm, require_advice(spec)));
  } else {
    BlockMap bm = kind == "cgs" ? cgs_to_blockmap(cgs_from_json(doc), a.truncation) : blockmap_from_json(doc);
    if (a.binary) bm = binary_square_map(bm);
    scene = blockmap_scene(bm);
  }
  emit(a.out, render_svg(scene, a.digits));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypershift: Turing machines with advice as shifts, block maps and flows"};
  app.require_subcommand(1);

  CompileArgs compile;
  auto* c = app.add_subcommand("compile", "Compile a machine to a shift or block-map spec");
  c->add_option("machine", compile.machine, "Machine JSON")->required();
  c->add_option("--target", compile.target, "gs, cgs, asm or blockmap")
      ->check(CLI::IsMember({"gs", "cgs", "asm", "blockmap"}));
  c->add_option("--truncation", compile.truncation, "Highest advice level in a block map");
  c->add_option("--out", compile.out, "Output file (stdout by default)");
  c->add_option("--csv", compile.csv, "Piece list CSV (blockmap target)");
  c->add_option("--svg", compile.svg, "SVG figure (blockmap target)");
  c->add_option("--digits", compile.digits, "Decimals in SVG coordinates")->check(CLI::PositiveNumber);

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run a machine or shift spec on an input");
  r->add_option("spec", run.spec, "Machine, gs or cgs JSON")->required();
  r->add_option("--input", run.input, "Input word")->required();
  r->add_option("--steps", run.steps, "Step budget");
  r->add_option("--trace", run.trace, "TSV trace file (stdout by default)");
  r->add_flag("--with-advice", run.with_advice, "Load the advice in the first step");
  r->add_option("--window", run.window, "Trace window radius")->check(CLI::NonNegativeNumber);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run verification suites and print a JSON report");
  v->add_option("machine", verify.machine, "Machine JSON")->required();
  v->add_option("--suite", verify.suites, "conjugacy, injectivity, geometry, flow or all (comma separated)");
  v->add_option("--max-input-size", verify.options.max_input_size, "Largest input size checked");
  v->add_option("--step-budget", verify.options.step_budget, "Steps compared for non-halting inputs");
  v->add_option("--orbit-steps", verify.options.orbit_steps, "Steps followed in the square");
  v->add_option("--threads", verify.options.threads, "Worker threads (0 = hardware)");
  v->add_option("--against", verify.against, "Countable shift spec to check instead of the compiled one");
  v->add_option("--report", verify.report, "Report file (stdout by default)");

  FlowArgs flow;
  auto* f = app.add_subcommand("flow", "Sample the suspension flow along a machine run");
  f->add_option("machine", flow.machine, "Machine JSON with advice")->required();
  f->add_option("--input", flow.input, "Input word")->required();
  f->add_option("--n-max", flow.n_max, "Machine steps to sample");
  f->add_option("--speed", flow.speed, "Constant speed as num/den");
  f->add_option("--truncation", flow.truncation, "Block-map truncation (input size by default)");
  f->add_option("--eps-u", flow.eps_u, "Halting neighbourhood radius as num/den");
  f->add_option("--out", flow.out, "Output file (stdout by default)");
  f->add_option("--csv", flow.csv, "Trace CSV: step, t, config, x, y, z, distance to U");

  RenderArgs render;
  auto* g = app.add_subcommand("render", "Render a block map, countable shift or machine block family as SVG");
  g->add_option("spec", render.spec, "Blockmap, cgs or machine JSON")->required();
  g->add_option("--digits", render.digits, "Decimals in coordinates")->check(CLI::PositiveNumber);
  g->add_option("--out", render.out, "SVG file (stdout by default)");
  g->add_flag("--binary", render.binary, "Binary square digits (2-symbol maps)");
  g->add_option("--truncation", render.truncation, "Truncation for cgs specs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*c) return cmd_compile(compile);
    if (*r) return cmd_run(run);
    if (*v) return cmd_verify(verify);
    if (*f) return cmd_flow(flow);
    if (*g) return cmd_render(render);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
