#include "twostep/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace twostep {

namespace {

using nlohmann::json;

[[noreturn]] void fail_validation(const std::string& message) {
  throw ScenarioError(ScenarioError::Kind::Validation, message);
}

void reject_unknown_keys(const json& object, const char* where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail_validation(std::string(where) + ": unknown key '" + item.key() +
                      "'");
    }
  }
}

double require_number(const json& value, const std::string& field) {
  if (!value.is_number()) fail_validation(field + ": expected a number");
  return value.get<double>();
}

Protocol parse_protocol(const std::string& name) {
  if (name == "gv") return Protocol::GV;
  if (name == "bb84") return Protocol::BB84;
  if (name == "two_step") return Protocol::TwoStepInterp;
  if (name == "relativistic_gv") return Protocol::RelativisticGV;
  fail_validation("protocol: unknown value '" + name + "'");
}

StrategyKind parse_strategy_kind(const std::string& name) {
  if (name == "none") return StrategyKind::None;
  if (name == "branch_qnd") return StrategyKind::BranchQnd;
  if (name == "delay_line") return StrategyKind::DelayLine;
  if (name == "dummy_particle") return StrategyKind::DummyParticle;
  if (name == "mirror_team") return StrategyKind::MirrorTeam;
  if (name == "intercept_resend") return StrategyKind::InterceptResend;
  fail_validation("strategy: unknown value '" + name + "'");
}

Strategy parse_strategy(const json& value, const Geometry& geometry) {
  Strategy strategy;
  if (value.is_string()) {
    strategy.kind = parse_strategy_kind(value.get<std::string>());
  } else if (value.is_object()) {
    reject_unknown_keys(value, "strategy",
                        {"name", "branch", "destructive", "detours"});
    if (!value.contains("name") || !value["name"].is_string()) {
      fail_validation("strategy.name: expected a string");
    }
    strategy.kind = parse_strategy_kind(value["name"].get<std::string>());
    if (value.contains("branch")) {
      const std::string branch = value["branch"].get<std::string>();
      if (branch == "a") {
        strategy.qnd_branch = Mode::A;
      } else if (branch == "b") {
        strategy.qnd_branch = Mode::B;
      } else {
        fail_validation("strategy.branch: expected \"a\" or \"b\"");
      }
    }
    if (value.contains("destructive")) {
      if (!value["destructive"].is_boolean()) {
        fail_validation("strategy.destructive: expected a boolean");
      }
      strategy.qnd_destructive = value["destructive"].get<bool>();
    }
    if (value.contains("detours")) {
      const json& detours = value["detours"];
      if (!detours.is_array() || detours.size() != 4) {
        fail_validation("strategy.detours: expected an array of 4 lengths");
      }
      strategy.route.a_to_center = require_number(detours[0], "strategy.detours[0]");
      strategy.route.a_to_bob = require_number(detours[1], "strategy.detours[1]");
      strategy.route.b_to_center = require_number(detours[2], "strategy.detours[2]");
      strategy.route.b_to_bob = require_number(detours[3], "strategy.detours[3]");
    }
  } else {
    fail_validation("strategy: expected a string or an object");
  }
  // A mirror team without an explicit reroute keeps the path lengths intact.
  if (strategy.kind == StrategyKind::MirrorTeam &&
      strategy.route.total_a() == 0.0 && strategy.route.total_b() == 0.0) {
    strategy.route = MirrorRoute::length_preserving(geometry.length);
  }
  return strategy;
}

Geometry parse_geometry(const json& value) {
  Geometry g;
  reject_unknown_keys(value, "geometry", {"L", "c", "tau", "x_E", "w"});
  if (value.contains("L")) g.length = require_number(value["L"], "geometry.L");
  if (value.contains("c")) g.speed = require_number(value["c"], "geometry.c");
  if (value.contains("tau")) {
    g.ring_delay = require_number(value["tau"], "geometry.tau");
  }
  if (value.contains("x_E")) {
    g.eve_position = require_number(value["x_E"], "geometry.x_E");
  }
  if (value.contains("w")) {
    g.packet_width = require_number(value["w"], "geometry.w");
  }
  return g;
}

std::string format_g6(double value) {
  char buffer[48];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

json summary_object(const Scenario& s, std::uint64_t rounds,
                    std::uint64_t seed, const Summary& summary) {
  auto metric = [](const std::optional<double>& v) {
    return v.has_value() ? json(*v) : json(nullptr);
  };
  json out;
  out["protocol"] = to_string(s.protocol);
  out["strategy"] = strategy_name(s.strategy);
  out["rounds"] = rounds;
  out["seed"] = seed;
  out["qber"] = metric(summary.qber);
  out["detection_prob"] = metric(summary.detection_prob);
  out["eve_accuracy"] = metric(summary.eve_accuracy);
  out["mutual_info_bits"] = metric(summary.mutual_info_bits);
  out["sift_rate"] = metric(summary.sift_rate);
  return out;
}

}  // namespace

RunConfig parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(ScenarioError::Kind::Parse, e.what());
  }
  if (!doc.is_object()) {
    fail_validation("scenario: expected a JSON object");
  }
  reject_unknown_keys(doc, "scenario",
                      {"protocol", "strategy", "geometry", "announce_policy",
                       "timing_tolerance", "rounds", "seed"});
  if (!doc.contains("protocol") || !doc["protocol"].is_string()) {
    fail_validation("protocol: required string field");
  }

  RunConfig config;
  config.scenario.protocol = parse_protocol(doc["protocol"].get<std::string>());
  if (doc.contains("geometry")) {
    if (!doc["geometry"].is_object()) {
      fail_validation("geometry: expected an object");
    }
    config.scenario.geometry = parse_geometry(doc["geometry"]);
  }
  if (doc.contains("strategy")) {
    config.scenario.strategy =
        parse_strategy(doc["strategy"], config.scenario.geometry);
  }
  if (doc.contains("announce_policy")) {
    const std::string policy = doc["announce_policy"].get<std::string>();
    if (policy == "after_receipt") {
      config.scenario.announce = AnnouncePolicy::AfterReceipt;
    } else if (policy == "before_emission") {
      config.scenario.announce = AnnouncePolicy::BeforeEmission;
    } else {
      fail_validation("announce_policy: unknown value '" + policy + "'");
    }
  }
  if (doc.contains("timing_tolerance")) {
    config.scenario.timing_tolerance =
        require_number(doc["timing_tolerance"], "timing_tolerance");
  }
  if (doc.contains("rounds")) {
    if (!doc["rounds"].is_number_unsigned() || doc["rounds"].get<std::uint64_t>() < 1) {
      fail_validation("rounds: expected a positive integer");
    }
    config.rounds = doc["rounds"].get<std::uint64_t>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) {
      fail_validation("seed: expected a nonnegative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  }

  try {
    validate(config.scenario);
  } catch (const std::invalid_argument& e) {
    const std::string message = e.what();
    const bool applicability = message.find("does not apply") != std::string::npos;
    throw ScenarioError(applicability ? ScenarioError::Kind::Applicability
                                      : ScenarioError::Kind::Validation,
                        message);
  }

  if (!config.scenario.geometry.windows_disjoint()) {
    config.warnings.push_back("insecure geometry: windows overlap");
  }
  return config;
}

RunConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError(ScenarioError::Kind::Parse,
                        "cannot open scenario file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

std::string strategy_name(const Strategy& strategy) {
  return to_string(strategy.kind);
}

std::string summary_csv(const Scenario& s, std::uint64_t rounds,
                        std::uint64_t seed, const Summary& summary) {
  auto metric = [](const std::optional<double>& v) {
    return v.has_value() ? format_g6(*v) : std::string();
  };
  std::ostringstream out;
  out << "protocol,strategy,rounds,seed,qber,detection_prob,eve_accuracy,"
         "mutual_info_bits,sift_rate\n";
  out << to_string(s.protocol) << ',' << strategy_name(s.strategy) << ','
      << rounds << ',' << seed << ',' << metric(summary.qber) << ','
      << metric(summary.detection_prob) << ',' << metric(summary.eve_accuracy)
      << ',' << metric(summary.mutual_info_bits) << ','
      << metric(summary.sift_rate) << '\n';
  return out.str();
}

std::string summary_json(const Scenario& s, std::uint64_t rounds,
                         std::uint64_t seed, const Summary& summary) {
  return summary_object(s, rounds, seed, summary).dump() + "\n";
}

std::string record_json(const RoundRecord& rec, std::uint64_t round_index,
                        std::uint64_t seed) {
  json taps = json::array();
  for (const TapEvent& tap : rec.eve_taps) {
    json t;
    t["t"] = tap.time;
    t["branch"] = tap.branch.has_value() ? json(to_string(*tap.branch))
                                         : json(nullptr);
    t["action"] = to_string(tap.action);
    taps.push_back(std::move(t));
  }
  json out;
  out["round"] = round_index;
  out["seed"] = seed;
  out["alice_bit"] = rec.alice_bit;
  out["emission_time"] = rec.alice_secret.emission_time;
  if (rec.alice_secret.basis.has_value()) {
    out["basis"] = to_string(*rec.alice_secret.basis);
  }
  if (rec.alice_secret.convention.has_value()) {
    out["convention"] = to_string(*rec.alice_secret.convention);
  }
  out["eve_guess"] =
      rec.eve_guess.has_value() ? json(*rec.eve_guess) : json(nullptr);
  out["taps"] = std::move(taps);
  out["bob_bit"] = rec.bob_bit.has_value() ? json(*rec.bob_bit) : json(nullptr);
  out["detection_time"] = rec.detection_time;
  out["timing_ok"] = rec.timing.ok;
  out["timing_delta"] = rec.timing.delta;
  out["sifted"] = rec.sifted;
  out["alarm"] = rec.alarm;
  out["attack_infeasible"] = rec.attack_infeasible;
  return out.dump();
}

}  // namespace twostep
