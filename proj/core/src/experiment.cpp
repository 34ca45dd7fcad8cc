#include "twostep/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace twostep {

double mutual_information(
    const std::vector<std::vector<std::uint64_t>>& joint_counts) {
  if (joint_counts.empty() || joint_counts.front().empty()) {
    throw std::invalid_argument("mutual_information: empty table");
  }
  const std::size_t cols = joint_counts.front().size();
  std::uint64_t total = 0;
  std::vector<std::uint64_t> row_sum(joint_counts.size(), 0);
  std::vector<std::uint64_t> col_sum(cols, 0);
  for (std::size_t r = 0; r < joint_counts.size(); ++r) {
    if (joint_counts[r].size() != cols) {
      throw std::invalid_argument("mutual_information: ragged table");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      row_sum[r] += joint_counts[r][c];
      col_sum[c] += joint_counts[r][c];
      total += joint_counts[r][c];
    }
  }
  if (total == 0) {
    throw std::invalid_argument("mutual_information: all-zero table");
  }
  const double n = static_cast<double>(total);
  double bits = 0.0;
  for (std::size_t r = 0; r < joint_counts.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::uint64_t count = joint_counts[r][c];
      if (count == 0) continue;
      const double p = static_cast<double>(count) / n;
      const double px = static_cast<double>(row_sum[r]) / n;
      const double py = static_cast<double>(col_sum[c]) / n;
      bits += p * std::log2(p / (px * py));
    }
  }
  return bits;
}

namespace {

// Integer tallies only; merging is commutative, so the thread layout cannot
// change the summary.
struct Tally {
  std::uint64_t kept = 0;
  std::uint64_t errors = 0;
  std::uint64_t sifted = 0;
  std::uint64_t attacked = 0;
  std::uint64_t alarms = 0;
  std::uint64_t guesses = 0;
  std::uint64_t correct = 0;
  std::uint64_t joint[2][2] = {{0, 0}, {0, 0}};

  void add(const Scenario& s, const RoundRecord& rec) {
    const bool keep = rec.bob_bit.has_value() &&
                      (s.protocol != Protocol::BB84 || rec.sifted);
    if (keep) {
      ++kept;
      if (*rec.bob_bit != rec.alice_bit) ++errors;
    }
    if (rec.sifted) ++sifted;
    if (s.strategy.kind != StrategyKind::None && !rec.attack_infeasible) {
      ++attacked;
      if (rec.alarm) ++alarms;
    }
    if (rec.eve_guess.has_value()) {
      ++guesses;
      if (*rec.eve_guess == rec.alice_bit) ++correct;
      ++joint[rec.alice_bit & 1][*rec.eve_guess & 1];
    }
  }

  void merge(const Tally& other) {
    kept += other.kept;
    errors += other.errors;
    sifted += other.sifted;
    attacked += other.attacked;
    alarms += other.alarms;
    guesses += other.guesses;
    correct += other.correct;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) joint[r][c] += other.joint[r][c];
    }
  }
};

double ratio(std::uint64_t num, std::uint64_t den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ExperimentResult run_experiment(const Scenario& s, std::uint64_t n,
                                std::uint64_t master_seed,
                                const ExperimentOptions& options) {
  if (n < 1) throw std::invalid_argument("run_experiment: need at least one round");
  validate(s);  // refuse protocol/strategy mismatches before running anything

  ExperimentResult result;
  if (options.collect_records) result.records.resize(n);

  const unsigned hw = options.threads == 0 ? 1 : options.threads;
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(hw, n));

  std::vector<Tally> tallies(workers);
  auto run_range = [&](unsigned worker, std::uint64_t begin,
                       std::uint64_t end) {
    Tally local;  // keeps workers off each other's cache lines
    for (std::uint64_t i = begin; i < end; ++i) {
      RoundRng rng(round_seed(master_seed, i));
      const int bit = rng.next_bit();
      RoundRecord rec = run_round(s, bit, rng);
      local.add(s, rec);
      if (options.collect_records) result.records[i] = std::move(rec);
    }
    tallies[worker] = local;
  };

  if (workers <= 1) {
    run_range(0, 0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(n, begin + chunk);
      pool.emplace_back(run_range, w, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  Tally total;
  for (const Tally& t : tallies) total.merge(t);

  Summary& sum = result.summary;
  sum.rounds = n;
  if (total.kept > 0) sum.qber = ratio(total.errors, total.kept);
  if (total.attacked > 0) {
    sum.detection_prob = ratio(total.alarms, total.attacked);
  }
  if (total.guesses > 0) {
    sum.eve_accuracy = ratio(total.correct, total.guesses);
    sum.mutual_info_bits = mutual_information(
        {{total.joint[0][0], total.joint[0][1]},
         {total.joint[1][0], total.joint[1][1]}});
  }
  if (s.protocol == Protocol::BB84) sum.sift_rate = ratio(total.sifted, n);
  return result;
}

}  // namespace twostep
