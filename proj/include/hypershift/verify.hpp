#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypershift/io.hpp"

namespace hypershift {

struct VerifyOptions {
  /// Inputs of size 0..max_input_size; also the block-map truncation level.
  std::uint64_t max_input_size = 4;
  /// Machine steps compared by the conjugacy suite for inputs that do not halt.
  std::uint64_t step_budget = 2000;
  /// Orbit length followed by the geometry and flow suites, whose points
  /// carry exact rationals of growing size.
  std::uint64_t orbit_steps = 256;
  std::uint64_t seed = 20240607;
  /// Random (t1, t2) pairs drawn per input for the flow group law.
  std::size_t group_law_samples = 25;
  /// Worker threads for the per-input checks; 0 picks the hardware count.
  unsigned threads = 0;
};

/// The known suite names, in the order "all" expands to.
const std::vector<std::string>& suite_names();

/// {"suite": name, "pass": bool, "properties": [{"name", "pass", ...}]}.
/// Failing properties carry a "witness" object. `cgs` overrides the compiled
/// countable shift used by the conjugacy suite.
Json run_suite(const MachineSpec& spec, const std::string& suite, const VerifyOptions& options,
               const CountableShift* cgs = nullptr);

/// {"pass": bool, "suites": [...]} over the listed suites; MalformedInput for
/// an unknown name. An empty list passes.
Json verify_report(const MachineSpec& spec, const std::vector<std::string>& suites, const VerifyOptions& options,
                   const CountableShift* cgs = nullptr);

/// "state | window" rendering of a configuration over [-radius, radius].
std::string describe_config(const TuringMachine& tm, const Config& c, std::int64_t radius = 8);

/// Seed from HYPERSHIFT_SEED, or `fallback` when unset or unparsable.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace hypershift
