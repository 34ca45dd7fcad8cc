#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "twostep/experiment.hpp"
#include "twostep/scenario.hpp"

using namespace twostep;

TEST_CASE("minimal scenario gets the documented defaults") {
  const RunConfig config = parse_scenario_text(
      R"({"protocol":"gv","strategy":"none","rounds":1000,"seed":42})");
  CHECK(config.scenario.protocol == Protocol::GV);
  CHECK(config.scenario.strategy.kind == StrategyKind::None);
  CHECK(config.rounds == 1000);
  CHECK(config.seed == 42);
  CHECK(config.scenario.geometry.length == 1.0);
  CHECK(config.scenario.geometry.speed == 1.0);
  CHECK(config.scenario.geometry.ring_delay == 1.5);
  CHECK(config.scenario.geometry.eve_position == 0.5);
  CHECK(config.scenario.geometry.packet_width == 0.1);
  CHECK(config.scenario.timing_tolerance == 0.01);
  CHECK(config.scenario.announce == AnnouncePolicy::AfterReceipt);
  CHECK(config.warnings.empty());

  // protocol alone is enough
  const RunConfig bare = parse_scenario_text(R"({"protocol":"bb84"})");
  CHECK(bare.rounds == 1000);
  CHECK(bare.seed == 0);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_scenario_text("{\"protocol\": \"gv\",,}");
    FAIL("expected a parse error");
  } catch (const ScenarioError& e) {
    CHECK(e.kind() == ScenarioError::Kind::Parse);
    CHECK(std::string(e.what()).find("parse error") != std::string::npos);
  }
}

TEST_CASE("validation errors name the field") {
  try {
    parse_scenario_text(R"({"protocol":"gv","geometry":{"L":-1}})");
    FAIL("expected a validation error");
  } catch (const ScenarioError& e) {
    CHECK(e.kind() == ScenarioError::Kind::Validation);
    CHECK(std::string(e.what()).find("L") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_scenario_text(R"({"protocol":"warp"})"),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario_text(R"({"protocol":"gv","rounds":0})"),
                  ScenarioError);
  CHECK_THROWS_AS(
      parse_scenario_text(R"({"protocol":"gv","strategy":"quantum_cloner"})"),
      ScenarioError);
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_AS(parse_scenario_text(R"({"protocol":"gv","notes":"hi"})"),
                  ScenarioError);
  CHECK_THROWS_AS(
      parse_scenario_text(R"({"protocol":"gv","geometry":{"len":2}})"),
      ScenarioError);
  CHECK_THROWS_AS(
      parse_scenario_text(
          R"({"protocol":"gv","strategy":{"name":"none","power":9}})"),
      ScenarioError);
}

TEST_CASE("applicability is checked at load time") {
  try {
    parse_scenario_text(R"({"protocol":"bb84","strategy":"delay_line"})");
    FAIL("expected an applicability error");
  } catch (const ScenarioError& e) {
    CHECK(e.kind() == ScenarioError::Kind::Applicability);
  }
}

TEST_CASE("overlapping windows produce the insecure-geometry warning") {
  const RunConfig config = parse_scenario_text(
      R"({"protocol":"gv","geometry":{"tau":0.05,"w":0.1}})");
  REQUIRE(config.warnings.size() == 1);
  CHECK(config.warnings[0] == "insecure geometry: windows overlap");
}

TEST_CASE("strategy parameters") {
  const RunConfig qnd = parse_scenario_text(
      R"({"protocol":"gv","strategy":{"name":"branch_qnd","branch":"b","destructive":true}})");
  CHECK(qnd.scenario.strategy.kind == StrategyKind::BranchQnd);
  CHECK(qnd.scenario.strategy.qnd_branch == Mode::B);
  CHECK(qnd.scenario.strategy.qnd_destructive);

  const RunConfig mirror = parse_scenario_text(
      R"({"protocol":"relativistic_gv","strategy":{"name":"mirror_team","detours":[0.6,0.6,0.5,0.5]}})");
  CHECK(mirror.scenario.strategy.route.a_to_center == 0.6);
  CHECK(mirror.scenario.strategy.route.b_to_bob == 0.5);

  // bare mirror_team defaults to a length-preserving reroute
  const RunConfig bare = parse_scenario_text(
      R"({"protocol":"relativistic_gv","strategy":"mirror_team","geometry":{"L":2}})");
  CHECK(bare.scenario.strategy.route.total_a() == 2.0);
  CHECK(bare.scenario.strategy.route.total_b() == 2.0);
}

TEST_CASE("csv and json summaries carry the same numbers") {
  Scenario s;
  s.strategy = Strategy::branch_qnd(Mode::A);
  const auto result = run_experiment(s, 5000, 17);
  const std::string csv = summary_csv(s, 5000, 17, result.summary);
  const std::string json_text = summary_json(s, 5000, 17, result.summary);

  // header is bit-exact
  const std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "protocol,strategy,rounds,seed,qber,detection_prob,eve_accuracy,"
        "mutual_info_bits,sift_rate");

  // csv fields equal the json values rendered at 6 significant digits
  std::string row = csv.substr(csv.find('\n') + 1);
  if (!row.empty() && row.back() == '\n') row.pop_back();
  auto next_field = [&row]() {
    const auto comma = row.find(',');
    std::string field = row.substr(0, comma);
    row = comma == std::string::npos ? std::string() : row.substr(comma + 1);
    return field;
  };
  CHECK(next_field() == "gv");
  CHECK(next_field() == "branch_qnd");
  CHECK(next_field() == "5000");
  CHECK(next_field() == "17");
  auto g6 = [](double v) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return std::string(buffer);
  };
  CHECK(next_field() == g6(*result.summary.qber));
  CHECK(next_field() == g6(*result.summary.detection_prob));
  CHECK(next_field() == g6(*result.summary.eve_accuracy));
  CHECK(next_field() == g6(*result.summary.mutual_info_bits));
  CHECK(next_field() == "");  // sift rate does not apply outside bb84

  CHECK(json_text.find("\"sift_rate\":null") != std::string::npos);
  CHECK(json_text.find("\"protocol\":\"gv\"") != std::string::npos);
}

TEST_CASE("round records serialize to one json line each") {
  Scenario s;
  s.protocol = Protocol::BB84;
  s.strategy = Strategy::intercept_resend();
  ExperimentOptions options;
  options.collect_records = true;
  const auto result = run_experiment(s, 3, 5, options);
  for (std::uint64_t i = 0; i < 3; ++i) {
    const std::string line = record_json(result.records[i], i, round_seed(5, i));
    CHECK(line.find('\n') == std::string::npos);
    CHECK(line.find("\"alice_bit\"") != std::string::npos);
    CHECK(line.find("\"taps\"") != std::string::npos);
    CHECK(line.find("\"basis\"") != std::string::npos);
  }
}
