#include "twostep/protocol.hpp"

#include <numbers>
#include <stdexcept>

namespace twostep {

namespace {

// Every round's clock starts at its own emission; absolute time drops out of
// all checks (schedules are translation covariant).
constexpr double kEmissionTime = 0.0;

void require_protocol(const Scenario& s, Protocol expected) {
  if (s.protocol != expected) {
    throw std::invalid_argument("round runner called with the wrong protocol");
  }
}

std::optional<int> detector_to_bit(Detector det) {
  switch (det) {
    case Detector::D0: return 0;
    case Detector::D1: return 1;
    default: return std::nullopt;
  }
}

// Asserts the record-completeness contract for the orthogonal-carrier
// protocols: every tap timestamp lies inside a legal access window.
void check_taps_legal(const std::vector<TapEvent>& taps,
                      const WindowPair& windows) {
  for (const TapEvent& tap : taps) {
    bool legal;
    if (tap.branch.has_value()) {
      legal = windows.for_mode(*tap.branch).contains(tap.time);
    } else {
      legal = windows.branch_a.contains(tap.time) ||
              windows.branch_b.contains(tap.time);
    }
    if (!legal) {
      throw std::logic_error("adversary tap outside every access window");
    }
  }
}

}  // namespace

void validate(const Scenario& s) {
  s.geometry.validate();
  if (!applicable(s.protocol, s.strategy.kind)) {
    throw std::invalid_argument(std::string("strategy '") +
                                to_string(s.strategy.kind) +
                                "' does not apply to protocol '" +
                                to_string(s.protocol) + "'");
  }
  if (!(s.timing_tolerance >= 0.0)) {
    throw std::invalid_argument("timing_tolerance must be >= 0");
  }
  if (s.strategy.kind == StrategyKind::MirrorTeam) {
    const MirrorRoute& r = s.strategy.route;
    if (!(r.a_to_center > 0.0) || !(r.a_to_bob > 0.0) ||
        !(r.b_to_center > 0.0) || !(r.b_to_bob > 0.0)) {
      throw std::invalid_argument("mirror_team: reroute legs must be > 0");
    }
  }
}

RoundRecord run_gv_round(const Scenario& s, int bit, RoundRng& rng) {
  require_protocol(s, Protocol::GV);
  const Geometry& g = s.geometry;
  const double t0 = kEmissionTime;
  const WorldlineSchedule plan = schedule(t0, g);
  const WindowPair windows = eve_windows(t0, g);

  RoundRecord rec;
  rec.alice_bit = bit;
  rec.alice_secret.emission_time = t0;

  PureState carrier = encode_gv_bit(bit);
  double detection_time = plan.recombine_time();

  switch (s.strategy.kind) {
    case StrategyKind::None:
      break;
    case StrategyKind::BranchQnd: {
      const Mode branch = s.strategy.qnd_branch;
      TapContext ctx(branch, windows.for_mode(branch), carrier, rec.eve_taps);
      rec.eve_guess = branch_qnd(ctx, rng, s.strategy.qnd_destructive);
      break;
    }
    case StrategyKind::DelayLine: {
      const auto out =
          delay_line(carrier, windows, g.ring_delay, rng, rec.eve_taps);
      rec.eve_guess = out.eve_bit;
      carrier = out.resent;
      detection_time += out.delay;
      break;
    }
    case StrategyKind::DummyParticle: {
      if (s.announce == AnnouncePolicy::BeforeEmission) {
        const auto out = dummy_particle(carrier, t0, g, rng, rec.eve_taps);
        rec.eve_guess = out.eve_bit;
        carrier = out.delivered;
      } else {
        // The emission time arrives only after Bob's receipt, so the dummy
        // cannot be timed. Reported, and the round proceeds untouched.
        rec.attack_infeasible = true;
      }
      break;
    }
    default:
      throw std::invalid_argument("strategy does not apply to gv");
  }

  rec.bob_bit = detector_to_bit(gv_decode(carrier, rng.next_unit()));
  rec.detection_time = detection_time;
  rec.timing = timing_check(t0, detection_time, g, s.timing_tolerance);
  rec.alarm = !rec.timing.ok || !rec.bob_bit.has_value();
  check_taps_legal(rec.eve_taps, windows);
  return rec;
}

RoundRecord run_bb84_round(const Scenario& s, int bit, RoundRng& rng) {
  require_protocol(s, Protocol::BB84);
  const Geometry& g = s.geometry;
  const double t0 = kEmissionTime;

  RoundRecord rec;
  rec.alice_bit = bit;
  const Basis alice_basis = rng.next_bit() ? Basis::X : Basis::Z;
  rec.alice_secret.emission_time = t0;
  rec.alice_secret.basis = alice_basis;

  Qubit carrier = bb84_encode(bit, alice_basis);

  if (s.strategy.kind == StrategyKind::InterceptResend) {
    const double tap_time = t0 + g.eve_position / g.speed;
    const auto out = intercept_resend(carrier, tap_time, rng, rec.eve_taps);
    rec.eve_guess = out.eve_bit;
    carrier = out.resent;
  } else if (s.strategy.kind != StrategyKind::None) {
    throw std::invalid_argument("strategy does not apply to bb84");
  }

  const Basis bob_basis = rng.next_bit() ? Basis::X : Basis::Z;
  const auto result = measure_basis(carrier, bob_basis, rng.next_unit());
  rec.bob_bit = result.bit;
  rec.sifted = bob_basis == alice_basis;
  rec.detection_time = t0 + g.transit_time();
  rec.timing = {true, 0.0};
  rec.alarm = false;
  return rec;
}

RoundRecord run_two_step_round(const Scenario& s, int bit, RoundRng& rng) {
  require_protocol(s, Protocol::TwoStepInterp);
  const Geometry& g = s.geometry;
  // The emission time is public by design here; the withheld second step is
  // the sign convention, disclosed only after Bob's receipt.
  const double t0 = kEmissionTime;
  const WorldlineSchedule plan = schedule(t0, g);
  const WindowPair windows = eve_windows(t0, g);

  RoundRecord rec;
  rec.alice_bit = bit;
  const Convention conv = rng.next_bit() ? Convention::B : Convention::A;
  rec.alice_secret.emission_time = t0;
  rec.alice_secret.convention = conv;

  PureState carrier = encode_gv_bit(bit);
  if (conv == Convention::B) {
    carrier = phase_shift(carrier, Mode::B, std::numbers::pi);
  }
  double detection_time = plan.recombine_time();

  switch (s.strategy.kind) {
    case StrategyKind::None:
      break;
    case StrategyKind::BranchQnd: {
      const Mode branch = s.strategy.qnd_branch;
      TapContext ctx(branch, windows.for_mode(branch), carrier, rec.eve_taps);
      rec.eve_guess = branch_qnd(ctx, rng, s.strategy.qnd_destructive);
      break;
    }
    case StrategyKind::DelayLine: {
      // She reads the sign with certainty and forwards it faithfully; once
      // the convention is disclosed she knows the bit. Only the delay on the
      // pre-announced schedule betrays her.
      const auto out =
          delay_line(carrier, windows, g.ring_delay, rng, rec.eve_taps);
      const int sign = out.eve_bit;
      rec.eve_guess = conv == Convention::A ? sign : 1 - sign;
      carrier = out.resent;  // the sign state she saw, forwarded faithfully
      detection_time += out.delay;
      break;
    }
    default:
      throw std::invalid_argument("strategy does not apply to two_step");
  }

  // Bob stores the carrier (ideal storage) and decodes after disclosure.
  PureState stored = carrier;
  if (conv == Convention::B) {
    stored = phase_shift(stored, Mode::B, std::numbers::pi);
  }
  rec.bob_bit = detector_to_bit(gv_decode(stored, rng.next_unit()));
  rec.detection_time = detection_time;
  rec.timing = timing_check(t0, detection_time, g, s.timing_tolerance);
  rec.alarm = !rec.timing.ok || !rec.bob_bit.has_value();
  check_taps_legal(rec.eve_taps, windows);
  return rec;
}

RoundRecord run_relativistic_round(const Scenario& s, int bit, RoundRng& rng) {
  require_protocol(s, Protocol::RelativisticGV);
  const Geometry& g = s.geometry;
  // Widely separated equal paths replace the time delay: both packets are
  // emitted together and must arrive together. Any ring delay in the
  // geometry is ignored here.
  const double t0 = kEmissionTime;
  const double path_a = g.length;
  const double path_b = g.length;
  const double expected_a = t0 + path_a / g.speed;
  const double expected_b = t0 + path_b / g.speed;

  RoundRecord rec;
  rec.alice_bit = bit;
  rec.alice_secret.emission_time = t0;

  PureState carrier = encode_gv_bit(bit);
  double arrival_a = expected_a;
  double arrival_b = expected_b;

  if (s.strategy.kind == StrategyKind::MirrorTeam) {
    const auto out = mirror_team(carrier, path_a, path_b, s.strategy.route,
                                 g.speed, t0, rng, rec.eve_taps);
    rec.eve_guess = out.eve_bit;
    carrier = out.resent;
    arrival_a += out.shift_a;
    arrival_b += out.shift_b;
  } else if (s.strategy.kind != StrategyKind::None) {
    throw std::invalid_argument("strategy does not apply to relativistic_gv");
  }

  rec.bob_bit = detector_to_bit(gv_decode(carrier, rng.next_unit()));
  rec.detection_time = std::max(arrival_a, arrival_b);

  // Bob checks each path's arrival against the announced emission time.
  const double delta_a = arrival_a - expected_a;
  const double delta_b = arrival_b - expected_b;
  const double worst =
      std::abs(delta_a) >= std::abs(delta_b) ? delta_a : delta_b;
  rec.timing = {std::abs(worst) <= s.timing_tolerance, worst};
  rec.alarm = !rec.timing.ok || !rec.bob_bit.has_value();
  return rec;
}

RoundRecord run_round(const Scenario& s, int bit, RoundRng& rng) {
  switch (s.protocol) {
    case Protocol::GV: return run_gv_round(s, bit, rng);
    case Protocol::BB84: return run_bb84_round(s, bit, rng);
    case Protocol::TwoStepInterp: return run_two_step_round(s, bit, rng);
    default: return run_relativistic_round(s, bit, rng);
  }
}

const char* to_string(AnnouncePolicy policy) {
  return policy == AnnouncePolicy::AfterReceipt ? "after_receipt"
                                                : "before_emission";
}

const char* to_string(Convention convention) {
  return convention == Convention::A ? "A" : "B";
}

}  // namespace twostep
