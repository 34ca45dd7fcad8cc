#pragma once

// Seeded Monte Carlo runner. Rounds are independent: round i uses the
// generator seeded with round_seed(master_seed, i) and draws Alice's bit
// first, so any execution order (or thread count) reproduces the same
// records and the same summary, byte for byte.

#include <cstdint>
#include <optional>
#include <vector>

#include "twostep/protocol.hpp"

namespace twostep {

/// Aggregated statistics of one experiment. Fields that do not apply to the
/// run (no adversary, no guesses, not BB84) stay empty.
struct Summary {
  std::uint64_t rounds = 0;
  std::optional<double> qber;             // errors among kept bits
  std::optional<double> detection_prob;   // attacked rounds with an alarm
  std::optional<double> eve_accuracy;     // correct guesses among guesses
  std::optional<double> mutual_info_bits; // I(alice bit; eve guess)
  std::optional<double> sift_rate;        // BB84 rounds kept after sifting
};

/// Plug-in mutual information in bits of an R x K joint count table
/// (row = first variable, column = second). Zero-count cells contribute
/// nothing. Throws std::invalid_argument on an empty or all-zero table.
double mutual_information(
    const std::vector<std::vector<std::uint64_t>>& joint_counts);

struct ExperimentOptions {
  unsigned threads = 1;
  bool collect_records = false;
};

struct ExperimentResult {
  Summary summary;
  std::vector<RoundRecord> records;  // filled only when requested
};

/// Runs n rounds of the scenario. Alice's bits are drawn uniformly from each
/// round's own generator. Applicability and geometry are validated up front;
/// nothing runs if they fail.
ExperimentResult run_experiment(const Scenario& s, std::uint64_t n,
                                std::uint64_t master_seed,
                                const ExperimentOptions& options = {});

}  // namespace twostep
