#include "hypershift/flow.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <map>

#include "hypershift/compiler.hpp"
#include "hypershift/error.hpp"

namespace hypershift {

FirstIntegral FirstIntegral::constant(const Rational& c) {
  if (c <= 0) throw Error(ErrorKind::MalformedInput, "speed must be positive");
  return FirstIntegral("constant " + to_string(c), [c](const Point&) { return c; });
}

FirstIntegral FirstIntegral::per_orbit(const std::vector<std::vector<Point>>& orbits,
                                       const std::vector<Rational>& values) {
  if (orbits.size() != values.size()) throw Error(ErrorKind::MalformedInput, "one value per orbit is needed");
  auto table = std::make_shared<std::map<Point, Rational>>();
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (values[i] <= 0) throw Error(ErrorKind::MalformedInput, "speed must be positive");
    for (const auto& p : orbits[i]) {
      auto [it, inserted] = table->emplace(p, values[i]);
      if (!inserted && it->second != values[i]) {
        throw Error(ErrorKind::NotFirstIntegral, "two orbits with different values share a point");
      }
    }
  }
  return FirstIntegral("per-orbit", [table](const Point& p) {
    auto it = table->find(p);
    if (it == table->end()) throw Error(ErrorKind::NotFirstIntegral, "point outside the tabulated orbits");
    return it->second;
  });
}

Rational FirstIntegral::operator()(const Point& p) const { return fn_(p); }

FlowPoint flow_at(const SuspensionFlow& flow, const FlowPoint& p0, const Rational& t) {
  if (t < 0) throw Error(ErrorKind::MalformedInput, "flow time must be non-negative");
  Rational h = p0.z + t * flow.speed(p0.section);
  Integer n = floor(h);
  FlowPoint out{p0.section, h - Rational(n)};
  for (Integer i = 0; i < n; ++i) {
    auto next = flow.base->apply(out.section);
    if (!next) throw Error(ErrorKind::OrbitLeavesDomain, "orbit leaves the domain of the base map");
    out.section = std::move(*next);
  }
  return out;
}

Point expected_section_point(const TuringMachine& tm, const Config& c, std::uint64_t n, const Codec& codec) {
  Tape s = n == 0 ? cgs_encode_config(tm, c) : moore_encode(cgs_layout(tm), c);
  return exact_point(s, codec);
}

FlowReport simulate_check(const SuspensionFlow& flow, const TuringMachine& tm,
                          std::shared_ptr<const AdviceOracle> advice, const std::vector<Word>& inputs,
                          std::uint64_t n_max) {
  FlowReport report;
  const Codec& codec = flow.base->codec;
  for (const auto& input : inputs) {
    FlowCase fc;
    fc.input = input;
    AdviceRun run = run_with_advice(tm, *advice, input_tape(input), n_max);
    fc.halted = run.halted;
    FlowPoint start{expected_section_point(tm, run.trace.front(), 0, codec), 0};
    fc.k_s = Rational(1) / flow.speed(start.section);
    for (std::uint64_t n = 0; n < run.trace.size(); ++n) {
      Point expected = expected_section_point(tm, run.trace[n], n, codec);
      try {
        FlowPoint got = flow_at(flow, start, fc.k_s * Rational(static_cast<unsigned long>(n)));
        fc.samples.push_back(got.section);
        if (got.z != 0 || !(got.section == expected)) {
          fc.mismatch = FlowMismatch{n, expected, got, "section point differs"};
          break;
        }
      } catch (const Error& e) {
        fc.mismatch = FlowMismatch{n, expected, std::nullopt, e.what()};
        break;
      }
      fc.steps_checked = n;
    }
    report.cases.push_back(std::move(fc));
  }
  return report;
}

FirstIntegralReport first_integral_check(const FirstIntegral& f, const BlockMap& base, const std::vector<Point>& points,
                                         std::uint64_t n_steps) {
  for (const auto& p : points) {
    Point q = p;
    try {
      Rational v = f(p);
      for (std::uint64_t k = 1; k <= n_steps; ++k) {
        auto next = base.apply(q);
        if (!next) break;
        q = std::move(*next);
        if (f(q) != v) return FirstIntegralReport{false, FirstIntegralViolation{p, k}};
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotFirstIntegral) throw;
      return FirstIntegralReport{false, FirstIntegralViolation{p, 0}};
    }
  }
  return FirstIntegralReport{};
}

SuspensionFlow reparametrize(const SuspensionFlow& flow, const FirstIntegral& f, const std::vector<Point>& points,
                             std::uint64_t n_steps) {
  auto report = first_integral_check(f, *flow.base, points, n_steps);
  if (!report.ok) {
    throw Error(ErrorKind::NotFirstIntegral,
                f.name() + " changes along an orbit at step " + std::to_string(report.violation->step));
  }
  return SuspensionFlow{flow.base, f};
}

double SpeedProfile::speed(double z) const {
  double collar = eps / 4;
  if (z <= -eps + collar || z >= -collar) return 1;
  return c;
}

std::vector<double> SpeedProfile::breakpoints() const { return {-eps, -0.75 * eps, -0.25 * eps, 0.0}; }

SpeedProfile solve_speed_profile(double tau, double eps) {
  if (!(eps > 0 && eps < 1)) throw Error(ErrorKind::MalformedInput, "eps must lie in (0, 1)");
  SpeedProfile p;
  p.eps = eps;
  p.tau = tau;
  p.target = 1 - tau + eps;
  // Collars take eps/2 at speed 1; the middle half must take the rest.
  double middle = p.target - eps / 2;
  if (!(middle > 0)) throw Error(ErrorKind::InfeasibleTarget, "target traversal time is not above eps/2");
  p.c = (eps / 2) / middle;
  return p;
}

double traversal_time_quadrature(const SpeedProfile& profile) {
  using boost::math::quadrature::gauss_kronrod;
  auto bp = profile.breakpoints();
  auto integrand = [&](double z) { return 1.0 / profile.speed(z); };
  double total = 0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    total += gauss_kronrod<double, 31>::integrate(integrand, bp[i], bp[i + 1], 10, 1e-14);
  }
  return total;
}

LengthBounds orbit_length(const Rational& time, const Rational& c, const Rational& C) {
  if (c <= 0 || C < c) throw Error(ErrorKind::MalformedInput, "norm profile needs 0 < c <= C");
  if (time < 0) throw Error(ErrorKind::MalformedInput, "time must be non-negative");
  return LengthBounds{c * time, C * time};
}

Rational rect_distance(const Rect& a, const Rect& b) {
  Rational dx = std::max({Rational(0), Rational(b.x0 - a.x1), Rational(a.x0 - b.x1)});
  Rational dy = std::max({Rational(0), Rational(b.y0 - a.y1), Rational(a.y0 - b.y1)});
  return std::max(dx, dy);
}

Rational point_rect_distance(const Point& p, const Rect& r) {
  Rational dx = std::max({Rational(0), Rational(r.x0 - p.x), Rational(p.x - r.x1)});
  Rational dy = std::max({Rational(0), Rational(r.y0 - p.y), Rational(p.y - r.y1)});
  return std::max(dx, dy);
}

Rational HaltingRegion::distance_to_halting(const Point& p) const { return point_rect_distance(p, block_); }

Rational HaltingRegion::distance_to_region(const Point& p) const {
  return std::max(Rational(0), Rational(distance_to_halting(p) - eps_u_));
}

HaltingRegion halting_region(const BlockMap& bm, const TuringMachine& tm, const Rational& eps_u) {
  MachineLayout layout = cgs_layout(tm);
  Rect block = cylinder_rect(Cylinder{0, {layout.state_symbol(tm.halting())}}, bm.codec);
  std::optional<Rational> gap;
  for (const auto& piece : bm.pieces) {
    for (const auto& r : piece.sources) {
      Rational d = rect_distance(block, r);
      if (!gap || d < *gap) gap = d;
    }
  }
  if (!gap) gap = Rational(1);
  if (!(eps_u > 0) || !(eps_u < *gap / 2)) {
    throw Error(ErrorKind::GapTooSmall,
                "eps_u = " + to_string(eps_u) + " must lie strictly between 0 and half the gap " + to_string(*gap));
  }
  return HaltingRegion(block, eps_u, *gap);
}

}  // namespace hypershift
