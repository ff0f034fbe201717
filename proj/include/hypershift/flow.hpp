#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypershift/advice.hpp"
#include "hypershift/geometry.hpp"
#include "hypershift/rational.hpp"
#include "hypershift/turing_machine.hpp"

namespace hypershift {

/// Positive function on section points. It must be constant along orbits of
/// the base map; `first_integral_check` tests that.
class FirstIntegral {
 public:
  using Fn = std::function<Rational(const Point&)>;

  FirstIntegral(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  static FirstIntegral constant(const Rational& c);
  /// Value `values[i]` on every point of `orbits[i]`; NotFirstIntegral for a
  /// point outside all of them.
  static FirstIntegral per_orbit(const std::vector<std::vector<Point>>& orbits, const std::vector<Rational>& values);

  Rational operator()(const Point& p) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
};

struct FlowPoint {
  Point section;
  /// Height in [0, 1).
  Rational z;

  friend bool operator==(const FlowPoint& a, const FlowPoint& b) { return a.section == b.section && a.z == b.z; }
};

/// Suspension of a block map with roof 1, moving at speed f(p) along the
/// orbit of p, so that the first return to the section takes 1/f(p).
struct SuspensionFlow {
  std::shared_ptr<const BlockMap> base;
  FirstIntegral speed = FirstIntegral::constant(1);
};

/// n = floor(z0 + t f(p0)) base steps, new height frac(z0 + t f(p0)).
/// OrbitLeavesDomain when a return lands outside every piece; t must be >= 0.
FlowPoint flow_at(const SuspensionFlow& flow, const FlowPoint& p0, const Rational& t);

struct FlowMismatch {
  std::uint64_t step = 0;
  Point expected;
  std::optional<FlowPoint> actual;
  std::string reason;
};

struct FlowCase {
  Word input;
  /// Time between consecutive machine steps, 1/f(p0).
  Rational k_s;
  std::uint64_t steps_checked = 0;
  bool halted = false;
  /// Section points y(K_s n) for n = 0..steps_checked.
  std::vector<Point> samples;
  std::optional<FlowMismatch> mismatch;

  bool ok() const { return !mismatch; }
};

struct FlowReport {
  /// "real-time" for the countable shift path.
  std::string mode = "real-time";
  std::vector<FlowCase> cases;

  bool ok() const {
    for (const auto& c : cases) {
      if (!c.ok()) return false;
    }
    return true;
  }
};

/// Expected section point of the n-th configuration of a run with advice:
/// the marked encoding for n = 0 and the moore encoding afterwards, matching
/// what the compiled countable shift produces.
Point expected_section_point(const TuringMachine& tm, const Config& c, std::uint64_t n, const Codec& codec);

/// Checks y(K_s n) = e(phi(Delta^n(q0, s))) for n up to min(halting, n_max).
FlowReport simulate_check(const SuspensionFlow& flow, const TuringMachine& tm,
                          std::shared_ptr<const AdviceOracle> advice, const std::vector<Word>& inputs,
                          std::uint64_t n_max);

struct FirstIntegralViolation {
  Point point;
  std::uint64_t step = 0;
};

struct FirstIntegralReport {
  bool ok = true;
  std::optional<FirstIntegralViolation> violation;
};

/// f(base^k(p)) = f(p) for k <= n_steps, stopping early where the orbit
/// leaves the domain of the base map.
FirstIntegralReport first_integral_check(const FirstIntegral& f, const BlockMap& base, const std::vector<Point>& points,
                                         std::uint64_t n_steps);

/// Flow with speed f; NotFirstIntegral if f is not constant along the orbits
/// of `points` for `n_steps` steps.
SuspensionFlow reparametrize(const SuspensionFlow& flow, const FirstIntegral& f, const std::vector<Point>& points,
                             std::uint64_t n_steps);

/// Three-piece speed profile on [-eps, 0]: speed 1 on the collars
/// [-eps, -3eps/4] and [-eps/4, 0], constant c in the middle, with c chosen so
/// that the traversal time  integral of dz / s  equals 1 - tau + eps.
struct SpeedProfile {
  double eps = 0;
  double tau = 0;
  double target = 0;
  double c = 1;

  double speed(double z) const;
  /// g = s - 1.
  double g(double z) const { return speed(z) - 1; }
  /// Break points -eps, -3eps/4, -eps/4, 0.
  std::vector<double> breakpoints() const;
};

/// InfeasibleTarget when 1 - tau + eps <= eps/2, since then no positive middle
/// speed exists. At tau = 1 the target is eps and the profile is constant 1.
SpeedProfile solve_speed_profile(double tau, double eps);

/// Traversal time by adaptive Gauss-Kronrod quadrature over each piece.
double traversal_time_quadrature(const SpeedProfile& profile);

struct LengthBounds {
  Rational lower;
  Rational upper;
};

/// Orbit length over time T when the field's norm lies in [c, C].
LengthBounds orbit_length(const Rational& time, const Rational& c, const Rational& C);

/// Open set around the halting strip: points within eps_u (L-infinity) of it.
class HaltingRegion {
 public:
  HaltingRegion(Rect halting_block, Rational eps_u, Rational gap)
      : block_(std::move(halting_block)), eps_u_(std::move(eps_u)), gap_(std::move(gap)) {}

  const Rect& block() const { return block_; }
  const Rational& eps_u() const { return eps_u_; }
  /// Exact L-infinity distance between the halting block and the sources.
  const Rational& gap() const { return gap_; }
  /// Lower bound on the distance to U of any point in a source block.
  Rational delta() const { return gap_ - eps_u_; }

  /// Exact L-infinity distance to the halting block.
  Rational distance_to_halting(const Point& p) const;
  /// Distance to U, i.e. max(0, distance_to_halting - eps_u).
  Rational distance_to_region(const Point& p) const;
  bool contains(const Point& p) const { return distance_to_halting(p) < eps_u_; }

 private:
  Rect block_;
  Rational eps_u_;
  Rational gap_;
};

Rational rect_distance(const Rect& a, const Rect& b);
Rational point_rect_distance(const Point& p, const Rect& r);

/// Halting strip of the compiled countable shift of `tm`. GapTooSmall unless
/// 0 < eps_u < gap / 2.
HaltingRegion halting_region(const BlockMap& bm, const TuringMachine& tm, const Rational& eps_u);

}  // namespace hypershift
