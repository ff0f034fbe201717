#include <cmath>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "hypershift/classification.hpp"
#include "hypershift/compiler.hpp"
#include "hypershift/error.hpp"
#include "hypershift/flow.hpp"

using namespace hypershift;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

struct Compiled {
  MachineSpec spec;
  std::shared_ptr<const BlockMap> bm;
  std::vector<Word> inputs;
};

Compiled compile(const char* name, std::uint64_t max_size) {
  Compiled c{test::corpus(name), nullptr, {}};
  c.inputs = enumerate_inputs(c.spec.tm->alphabet(), max_size);
  c.bm = std::make_shared<const BlockMap>(cgs_to_blockmap(tm_advice_to_cgs(*c.spec.tm, c.spec.advice), max_size));
  return c;
}

std::vector<Point> starts(const FlowReport& r) {
  std::vector<Point> out;
  for (const auto& c : r.cases) out.push_back(c.samples.front());
  return out;
}

}  // namespace

TEST_CASE("flow_at on the suspension") {
  Compiled inc = compile("inc", 3);
  SuspensionFlow flow{inc.bm};
  const TuringMachine& tm = *inc.spec.tm;
  Point p = expected_section_point(tm, Config{tm.initial(), input_tape(test::word(tm.alphabet(), "1111"))}, 0,
                                   inc.bm->codec);
  FlowPoint p0{p, 0};

  auto iterate = [&](Point q, int n) {
    for (int i = 0; i < n; ++i) q = *inc.bm->apply(q);
    return q;
  };
  CHECK(flow_at(flow, p0, 0) == p0);
  for (int n = 0; n <= 4; ++n) CHECK(flow_at(flow, p0, n) == FlowPoint{iterate(p, n), 0});
  CHECK(flow_at(flow, p0, Rational(5, 2)) == FlowPoint{iterate(p, 2), Rational(1, 2)});

  SuspensionFlow doubled{inc.bm, FirstIntegral::constant(2)};
  CHECK(flow_at(doubled, p0, Rational(3, 2)) == FlowPoint{iterate(p, 3), 0});

  SUBCASE("running past halting leaves the domain") {
    CHECK(kind_of([&] { flow_at(flow, p0, 50); }) == ErrorKind::OrbitLeavesDomain);
  }
  SUBCASE("negative time is rejected") { CHECK(kind_of([&] { flow_at(flow, p0, -1); }) == ErrorKind::MalformedInput); }
  SUBCASE("group law") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> num(0, 30), den(1, 12);
    for (int i = 0; i < 200; ++i) {
      // GMP leaves num/den as given until canonicalized.
      Rational t1(num(rng), den(rng)), t2(num(rng), den(rng));
      t1.canonicalize();
      t2.canonicalize();
      if (t1 + t2 > 5) continue;
      CHECK(flow_at(flow, p0, t1 + t2) == flow_at(flow, flow_at(flow, p0, t1), t2));
    }
  }
}

TEST_CASE("simulation check") {
  SUBCASE("INC samples every configuration through halting") {
    Compiled inc = compile("inc", 5);
    FlowReport r = simulate_check(SuspensionFlow{inc.bm}, *inc.spec.tm, inc.spec.advice, inc.inputs, 100);
    CHECK(r.mode == "real-time");
    CHECK(r.ok());
    for (const auto& c : r.cases) {
      CHECK(c.halted);
      CHECK(c.k_s == 1);
      AdviceRun run = run_with_advice(*inc.spec.tm, *inc.spec.advice, input_tape(c.input), 100);
      CHECK(c.samples.size() == run.trace.size());
      CHECK(c.steps_checked + 1 == run.trace.size());
    }
  }
  SUBCASE("every corpus machine") {
    for (const char* name : {"decider", "swap", "reversible"}) {
      Compiled m = compile(name, 4);
      INFO(name);
      CHECK(simulate_check(SuspensionFlow{m.bm}, *m.spec.tm, m.spec.advice, m.inputs, 40).ok());
    }
  }
  SUBCASE("n_max = 0 checks only the start") {
    Compiled inc = compile("inc", 2);
    FlowReport r = simulate_check(SuspensionFlow{inc.bm}, *inc.spec.tm, inc.spec.advice, inc.inputs, 0);
    CHECK(r.ok());
    for (const auto& c : r.cases) CHECK(c.samples.size() == 1);
  }
  SUBCASE("a corrupted piece is caught with its step") {
    Compiled inc = compile("inc", 3);
    BlockMap broken = *inc.bm;
    // The pair that reads (q0, 1) is used at step 1 of every run longer than zero.
    bool changed = false;
    for (auto& piece : broken.pieces) {
      const ConcretePair& pair = broken.pairs[piece.pair_index];
      if (pair.pattern.size() == 3 && index_of(pair.pattern[2]) == 1) {
        piece.map.v += Rational(1, 1000);
        changed = true;
      }
    }
    REQUIRE(changed);
    auto bm = std::make_shared<const BlockMap>(broken);
    FlowReport r = simulate_check(SuspensionFlow{bm}, *inc.spec.tm, inc.spec.advice,
                                  {test::word(inc.spec.tm->alphabet(), "11")}, 100);
    REQUIRE_FALSE(r.ok());
    const FlowMismatch& m = *r.cases.front().mismatch;
    CHECK(m.step == 2);
    REQUIRE(m.actual);
    CHECK_FALSE(m.actual->section == m.expected);
  }
}

TEST_CASE("reparametrization") {
  Compiled dec = compile("decider", 4);
  SuspensionFlow flow{dec.bm};
  FlowReport base = simulate_check(flow, *dec.spec.tm, dec.spec.advice, dec.inputs, 30);
  REQUIRE(base.ok());

  SUBCASE("constant speeds keep the sample sequence") {
    for (Rational c : {Rational(1, 3), Rational(1), Rational(2), Rational(7, 2)}) {
      SuspensionFlow fast = reparametrize(flow, FirstIntegral::constant(c), starts(base), 30);
      FlowReport r = simulate_check(fast, *dec.spec.tm, dec.spec.advice, dec.inputs, 30);
      REQUIRE(r.ok());
      for (std::size_t i = 0; i < r.cases.size(); ++i) {
        CHECK(r.cases[i].k_s == base.cases[i].k_s / c);
        CHECK(r.cases[i].samples == base.cases[i].samples);
      }
    }
  }
  SUBCASE("a speed constant on each orbit") {
    std::vector<std::vector<Point>> orbits;
    std::vector<Rational> values;
    for (std::size_t i = 0; i < base.cases.size(); ++i) {
      orbits.push_back(base.cases[i].samples);
      values.push_back(Rational(static_cast<long>(i % 5) + 1, 2));
    }
    FirstIntegral f = FirstIntegral::per_orbit(orbits, values);
    SuspensionFlow varied = reparametrize(flow, f, starts(base), 30);
    FlowReport r = simulate_check(varied, *dec.spec.tm, dec.spec.advice, dec.inputs, 30);
    REQUIRE(r.ok());
    for (std::size_t i = 0; i < r.cases.size(); ++i) {
      CHECK(r.cases[i].k_s == 1 / values[i]);
      CHECK(r.cases[i].samples == base.cases[i].samples);
    }
  }
  SUBCASE("the x coordinate is not a first integral") {
    FirstIntegral x("x", [](const Point& p) { return p.x + 1; });
    FirstIntegralReport rep = first_integral_check(x, *dec.bm, starts(base), 10);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violation->step >= 1);
    CHECK(kind_of([&] { reparametrize(flow, x, starts(base), 10); }) == ErrorKind::NotFirstIntegral);
    CHECK(first_integral_check(FirstIntegral::constant(3), *dec.bm, starts(base), 10).ok);
  }
}

TEST_CASE("speed profile") {
  SUBCASE("tau = 1 - eps gives c = 1/3") {
    for (double eps : {0.1, 0.25, 0.4}) {
      SpeedProfile p = solve_speed_profile(1 - eps, eps);
      CHECK(p.target == doctest::Approx(2 * eps));
      CHECK(p.c == doctest::Approx(1.0 / 3).epsilon(1e-12));
      CHECK(std::abs(traversal_time_quadrature(p) - p.target) < 1e-10);
    }
  }
  SUBCASE("collars run at speed 1") {
    SpeedProfile p = solve_speed_profile(0.5, 0.2);
    CHECK(p.speed(-0.2) == 1);
    CHECK(p.speed(-0.01) == 1);
    CHECK(p.speed(-0.1) == p.c);
    CHECK(p.g(-0.01) == 0);
    CHECK(p.breakpoints().size() == 4);
  }
  SUBCASE("tau close to 1 needs a large middle speed") {
    SpeedProfile p = solve_speed_profile(1.0 + 0.2 / 2 - 1e-3, 0.2);
    CHECK(p.c > 50);
    CHECK(std::abs(traversal_time_quadrature(p) - p.target) < 1e-10);
  }
  SUBCASE("target = eps leaves the profile constant") {
    SpeedProfile p = solve_speed_profile(1, 0.3);
    CHECK(p.c == doctest::Approx(1));
    CHECK(std::abs(traversal_time_quadrature(p) - 0.3) < 1e-10);
  }
  SUBCASE("no positive middle speed") {
    CHECK(kind_of([] { solve_speed_profile(1.2, 0.2); }) == ErrorKind::InfeasibleTarget);
  }
  SUBCASE("random samples agree with quadrature") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> tau(0.0, 1.0), eps(1e-3, 0.5);
    for (int i = 0; i < 100; ++i) {
      SpeedProfile p = solve_speed_profile(tau(rng), eps(rng));
      CHECK(std::abs(traversal_time_quadrature(p) - p.target) < 1e-10);
    }
  }
}

TEST_CASE("orbit length") {
  LengthBounds unit = orbit_length(7, 1, 1);
  CHECK(unit.lower == 7);
  CHECK(unit.upper == 7);
  LengthBounds b = orbit_length(10, Rational(1, 2), 2);
  CHECK(b.lower == 5);
  CHECK(b.upper == 20);
  LengthBounds twice = orbit_length(20, Rational(1, 2), 2);
  Rational lo = Rational(1, 2), hi = 2;
  CHECK(twice.lower / b.upper >= 2 * lo / hi);
  CHECK(twice.upper / b.lower <= 2 * hi / lo);
  CHECK(kind_of([] { orbit_length(1, 2, 1); }) == ErrorKind::MalformedInput);
}

TEST_CASE("halting region") {
  Compiled dec = compile("decider", 5);
  const TuringMachine& tm = *dec.spec.tm;
  MachineLayout layout = cgs_layout(tm);
  Rect strip = cylinder_rect(Cylinder{0, {layout.state_symbol(tm.halting())}}, dec.bm->codec);
  Rational gap = 1;
  for (const auto& piece : dec.bm->pieces) {
    for (const auto& r : piece.sources) gap = std::min(gap, rect_distance(strip, r));
  }
  REQUIRE(gap > 0);

  CHECK(kind_of([&] { halting_region(*dec.bm, tm, gap / 2); }) == ErrorKind::GapTooSmall);
  CHECK(kind_of([&] { halting_region(*dec.bm, tm, 0); }) == ErrorKind::GapTooSmall);
  HaltingRegion region = halting_region(*dec.bm, tm, gap / 3);
  CHECK(region.gap() == gap);
  CHECK(region.delta() == gap * 2 / 3);
  CHECK(region.distance_to_halting(Point{(strip.x0 + strip.x1) / 2, strip.y0}) == 0);

  SUBCASE("accepted inputs enter U, rejected ones keep away") {
    FlowReport r = simulate_check(SuspensionFlow{dec.bm}, tm, dec.spec.advice, dec.inputs, 40);
    REQUIRE(r.ok());
    std::size_t halted = 0, looped = 0;
    for (const auto& c : r.cases) {
      if (c.halted) {
        ++halted;
        CHECK(region.contains(c.samples.back()));
        for (std::size_t i = 0; i + 1 < c.samples.size(); ++i) CHECK_FALSE(region.contains(c.samples[i]));
      } else {
        ++looped;
        for (const auto& p : c.samples) CHECK(region.distance_to_region(p) >= region.delta());
      }
    }
    CHECK(halted > 0);
    CHECK(looped > 0);
  }
}
