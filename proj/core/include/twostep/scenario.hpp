#pragma once

// Batch front-end surface: scenario files in, machine-readable results out.
//
// Scenario JSON schema (unknown keys are rejected at every level):
//   {
//     "protocol": "gv" | "bb84" | "two_step" | "relativistic_gv",
//     "strategy": "none" | { "name": "branch_qnd", "branch": "a",
//                            "destructive": false }
//                        | { "name": "mirror_team",
//                            "detours": [a_to_center, a_to_bob,
//                                        b_to_center, b_to_bob] }
//                        | ... any strategy name as a bare string,
//     "geometry": { "L": 1, "c": 1, "tau": 1.5, "x_E": 0.5, "w": 0.1 },
//     "announce_policy": "after_receipt" | "before_emission",
//     "timing_tolerance": 0.01,
//     "rounds": 1000,
//     "seed": 42
//   }
// Only "protocol" is required; everything else defaults as shown.
//
// Summary CSV header, fixed:
//   protocol,strategy,rounds,seed,qber,detection_prob,eve_accuracy,mutual_info_bits,sift_rate
// Metrics that do not apply to a run are left empty (CSV) or null (JSON).
// CSV values carry 6 significant digits; JSON carries full precision.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "twostep/experiment.hpp"
#include "twostep/protocol.hpp"

namespace twostep {

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation, Applicability };

  ScenarioError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct RunConfig {
  Scenario scenario;
  std::uint64_t rounds = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;  // e.g. overlapping access windows
};

RunConfig parse_scenario_text(const std::string& text);
RunConfig parse_scenario_file(const std::string& path);

std::string strategy_name(const Strategy& strategy);

/// Two lines: the fixed header and one data row.
std::string summary_csv(const Scenario& s, std::uint64_t rounds,
                        std::uint64_t seed, const Summary& summary);

/// The same values as one flat JSON object, full precision.
std::string summary_json(const Scenario& s, std::uint64_t rounds,
                         std::uint64_t seed, const Summary& summary);

/// One per-round record as a single JSON line. Feeding the logged seed back
/// through single-round execution reproduces the record exactly.
std::string record_json(const RoundRecord& rec, std::uint64_t round_index,
                        std::uint64_t seed);

}  // namespace twostep
