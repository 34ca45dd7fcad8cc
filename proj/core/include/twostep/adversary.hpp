#pragma once

// The eavesdropping catalog. Every strategy acts only through legal access
// points: instantaneous taps go through a TapContext that exposes exactly one
// branch, and every action is logged as a TapEvent so rounds can assert that
// no tap happened outside an access window.

#include <array>
#include <optional>
#include <vector>

#include "twostep/quantum.hpp"
#include "twostep/rng.hpp"
#include "twostep/spacetime.hpp"

namespace twostep {

enum class Protocol { GV, BB84, TwoStepInterp, RelativisticGV };

enum class StrategyKind {
  None,
  BranchQnd,        // instantaneous photon-number tap on one branch
  DelayLine,        // hold branch a, interfere with b, re-emit one delay late
  DummyParticle,    // substitute a self-made pair; needs the emission time early
  MirrorTeam,       // reroute both relativistic paths through one center
  InterceptResend,  // BB84: measure in a random basis and resend
};

/// Mirror-team reroute: per branch, the leg from the original path to the
/// inspection center and the leg from the center on to Bob.
struct MirrorRoute {
  double a_to_center = 0.0;
  double a_to_bob = 0.0;
  double b_to_center = 0.0;
  double b_to_bob = 0.0;

  double total_a() const { return a_to_center + a_to_bob; }
  double total_b() const { return b_to_center + b_to_bob; }

  static MirrorRoute length_preserving(double path_length) {
    return {path_length / 2, path_length / 2, path_length / 2,
            path_length / 2};
  }
};

struct Strategy {
  StrategyKind kind = StrategyKind::None;
  Mode qnd_branch = Mode::A;     // BranchQnd: which branch she measures
  bool qnd_destructive = false;  // BranchQnd: absorb the photon instead of passing it on
  MirrorRoute route;             // MirrorTeam only

  static Strategy none() { return {}; }
  static Strategy branch_qnd(Mode branch, bool destructive = false) {
    Strategy s;
    s.kind = StrategyKind::BranchQnd;
    s.qnd_branch = branch;
    s.qnd_destructive = destructive;
    return s;
  }
  static Strategy delay_line() {
    Strategy s;
    s.kind = StrategyKind::DelayLine;
    return s;
  }
  static Strategy dummy_particle() {
    Strategy s;
    s.kind = StrategyKind::DummyParticle;
    return s;
  }
  static Strategy mirror_team(const MirrorRoute& route) {
    Strategy s;
    s.kind = StrategyKind::MirrorTeam;
    s.route = route;
    return s;
  }
  static Strategy intercept_resend() {
    Strategy s;
    s.kind = StrategyKind::InterceptResend;
    return s;
  }
};

/// Which strategies make sense against which protocol:
///   GV:             none, branch_qnd, delay_line, dummy_particle
///   BB84:           none, intercept_resend
///   two_step:       none, branch_qnd, delay_line
///   relativistic_gv: none, mirror_team
bool applicable(Protocol protocol, StrategyKind strategy);

enum class TapAction {
  MeasureNumber,  // instantaneous photon-number readout
  Capture,        // take a passing wavepacket into storage
  Interfere,      // run a captured pair through her own decoder
  Inject,         // send a self-made wavepacket toward Bob
  PhaseSet,       // imprint a phase on a held wavepacket
  Reemit,         // release a stored or fresh carrier toward Bob
};

struct TapEvent {
  double time = 0.0;
  std::optional<Mode> branch;  // empty for joint or single-channel actions
  TapAction action = TapAction::MeasureNumber;
};

/// Eve's handle on the carrier during one access window. Only the exposed
/// branch is reachable; touching the other one is a contract violation the
/// simulator reports by throwing std::logic_error.
class TapContext {
 public:
  TapContext(Mode exposed, const Window& window, PureState& carrier,
             std::vector<TapEvent>& taps)
      : exposed_(exposed), window_(window), carrier_(&carrier), taps_(&taps) {}

  Mode exposed_branch() const { return exposed_; }
  const Window& access_window() const { return window_; }

  /// Photon-number measurement of `branch`; the carrier collapses in place.
  int measure_number(Mode branch, double draw);

  /// Removes the photon just found in `branch`, leaving the vacuum.
  void absorb_photon(Mode branch);

 private:
  void require_exposed(Mode branch) const;

  Mode exposed_;
  Window window_;
  PureState* carrier_;
  std::vector<TapEvent>* taps_;
};

/// Instantaneous tap on the exposed branch. Returns the photon count; the
/// carrier continues to Bob collapsed (or, destructively, absorbed).
int branch_qnd(TapContext& ctx, RoundRng& rng, bool destructive = false);

struct DelayLineOutcome {
  int eve_bit;       // read with certainty from the captured pair
  PureState resent;  // fresh pair carrying the learned bit
  double delay;      // how late Bob's detection will be
};

/// Captures branch a in its window, holds it one ring delay, interferes with
/// branch b in the second window and re-encodes. Eve never needs the
/// announced emission time; she reacts to the packets she sees.
DelayLineOutcome delay_line(const PureState& carrier,
                            const WindowPair& windows, double hold_delay,
                            RoundRng& rng, std::vector<TapEvent>& taps);

struct DummyOutcome {
  int eve_bit;
  PureState delivered;  // the dummy pair Bob will actually decode
};

/// Substitutes a self-made pair for the real one. Timing the dummy requires
/// knowing the emission time before the first packet passes, which is why the
/// caller must gate this on the announcement policy.
DummyOutcome dummy_particle(const PureState& carrier, double announced_t0,
                            const Geometry& g, RoundRng& rng,
                            std::vector<TapEvent>& taps);

struct MirrorOutcome {
  int eve_bit;
  PureState resent;
  double shift_a;  // arrival-time change of branch a at Bob
  double shift_b;
};

/// Reroutes both relativistic paths through a common inspection center where
/// the team runs Bob's own decoder, then sends a fresh pair on. Arrival times
/// shift by (detour total - original path) / c per branch.
MirrorOutcome mirror_team(const PureState& carrier, double path_a,
                          double path_b, const MirrorRoute& route,
                          double speed, double t0, RoundRng& rng,
                          std::vector<TapEvent>& taps);

struct InterceptOutcome {
  int eve_bit;
  Basis eve_basis;
  Qubit resent;
};

/// Measures the flying BB84 qubit in a uniformly random basis and resends the
/// collapsed eigenstate.
InterceptOutcome intercept_resend(const Qubit& carrier, double tap_time,
                                  RoundRng& rng, std::vector<TapEvent>& taps);

const char* to_string(Protocol protocol);
const char* to_string(StrategyKind kind);
const char* to_string(TapAction action);

}  // namespace twostep
