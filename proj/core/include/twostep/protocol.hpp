#pragma once

// Round-level state machines. Each round is a pure function of
// (Scenario, bit, per-round generator): Alice encodes, the carrier follows
// its worldlines past the adversary's tap points, Bob decodes and runs his
// timing check. The output is one RoundRecord.

#include <optional>
#include <vector>

#include "twostep/adversary.hpp"
#include "twostep/quantum.hpp"
#include "twostep/rng.hpp"
#include "twostep/spacetime.hpp"

namespace twostep {

/// When Alice announces each round's exact emission time. Announcing only
/// after Bob's receipt is what keeps the dummy-particle attack infeasible.
enum class AnnouncePolicy { AfterReceipt, BeforeEmission };

/// The two interferometer sign choices of the two-step scheme. A encodes the
/// bit as usual; B adds a pi phase on branch b, flipping the mapping.
enum class Convention { A, B };

/// The delayed information accompanying a round: the emission time (orthogonal
/// carrier protocols), the basis (BB84), or the sign convention (two-step).
struct DelayedInfo {
  double emission_time = 0.0;
  std::optional<Basis> basis;
  std::optional<Convention> convention;
};

struct Scenario {
  Protocol protocol = Protocol::GV;
  Geometry geometry;
  AnnouncePolicy announce = AnnouncePolicy::AfterReceipt;
  Strategy strategy;
  double timing_tolerance = 0.01;
};

/// Throws std::invalid_argument when the geometry is out of range, the
/// strategy does not apply to the protocol, or the tolerance is negative.
void validate(const Scenario& s);

struct RoundRecord {
  int alice_bit = 0;
  DelayedInfo alice_secret;
  std::optional<int> eve_guess;
  std::vector<TapEvent> eve_taps;
  std::optional<int> bob_bit;  // empty when no detector fired
  double detection_time = 0.0;
  TimingVerdict timing;
  bool sifted = true;  // BB84: bases matched; always true elsewhere
  bool alarm = false;  // any integrity failure Bob can see
  bool attack_infeasible = false;  // strategy precondition failed; ran honestly
};

RoundRecord run_gv_round(const Scenario& s, int bit, RoundRng& rng);
RoundRecord run_bb84_round(const Scenario& s, int bit, RoundRng& rng);
RoundRecord run_two_step_round(const Scenario& s, int bit, RoundRng& rng);
RoundRecord run_relativistic_round(const Scenario& s, int bit, RoundRng& rng);

/// Dispatches on s.protocol.
RoundRecord run_round(const Scenario& s, int bit, RoundRng& rng);

const char* to_string(AnnouncePolicy policy);
const char* to_string(Convention convention);

}  // namespace twostep
