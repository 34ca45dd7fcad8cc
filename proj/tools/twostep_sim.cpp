// Batch runner: load a scenario file, run the experiment, write the summary
// as CSV or JSON, optionally with a per-round JSON-lines log.
//
// Exit codes: 0 success, 1 runtime failure, 2 scenario or flag validation.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twostep/experiment.hpp"
#include "twostep/rng.hpp"
#include "twostep/scenario.hpp"

namespace {

std::string rounds_log_path(const std::string& out_path) {
  return out_path.empty() ? "rounds.jsonl" : out_path + ".rounds.jsonl";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step quantum key distribution simulator"};

  std::string scenario_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t rounds_override = 0;
  std::uint64_t seed_override = 0;
  unsigned threads = 1;
  bool log_rounds = false;

  app.add_option("--scenario", scenario_path, "Scenario JSON file")
      ->required();
  auto* rounds_opt =
      app.add_option("--rounds", rounds_override, "Override the round count");
  auto* seed_opt =
      app.add_option("--seed", seed_override, "Override the master seed");
  app.add_option("--out", out_path,
                 "Write the summary here instead of stdout");
  app.add_option("--format", format, "Summary format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--log-rounds", log_rounds,
               "Also write per-round records as JSON lines "
               "(<out>.rounds.jsonl, or rounds.jsonl without --out)");
  app.add_option("--threads", threads, "Worker threads (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  twostep::RunConfig config;
  try {
    config = twostep::parse_scenario_file(scenario_path);
  } catch (const twostep::ScenarioError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  for (const std::string& warning : config.warnings) {
    std::cerr << "warning: " << warning << "\n";
  }
  if (rounds_opt->count() > 0) {
    if (rounds_override < 1) {
      std::cerr << "error: --rounds must be at least 1\n";
      return 2;
    }
    config.rounds = rounds_override;
  }
  if (seed_opt->count() > 0) config.seed = seed_override;

  try {
    twostep::ExperimentOptions options;
    options.threads = threads;
    options.collect_records = log_rounds;
    const twostep::ExperimentResult result = twostep::run_experiment(
        config.scenario, config.rounds, config.seed, options);

    const std::string text =
        format == "json"
            ? twostep::summary_json(config.scenario, config.rounds,
                                    config.seed, result.summary)
            : twostep::summary_csv(config.scenario, config.rounds, config.seed,
                                   result.summary);
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 1;
      }
      out << text;
    }

    if (log_rounds) {
      const std::string log_path = rounds_log_path(out_path);
      std::ofstream log(log_path);
      if (!log) {
        std::cerr << "error: cannot write " << log_path << "\n";
        return 1;
      }
      for (std::uint64_t i = 0; i < result.records.size(); ++i) {
        log << twostep::record_json(result.records[i], i,
                                    twostep::round_seed(config.seed, i))
            << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
