#include "twostep/adversary.hpp"

#include <numbers>
#include <stdexcept>

namespace twostep {

bool applicable(Protocol protocol, StrategyKind strategy) {
  if (strategy == StrategyKind::None) return true;
  switch (protocol) {
    case Protocol::GV:
      return strategy == StrategyKind::BranchQnd ||
             strategy == StrategyKind::DelayLine ||
             strategy == StrategyKind::DummyParticle;
    case Protocol::BB84:
      return strategy == StrategyKind::InterceptResend;
    case Protocol::TwoStepInterp:
      return strategy == StrategyKind::BranchQnd ||
             strategy == StrategyKind::DelayLine;
    case Protocol::RelativisticGV:
      return strategy == StrategyKind::MirrorTeam;
  }
  return false;
}

void TapContext::require_exposed(Mode branch) const {
  if (branch != exposed_) {
    throw std::logic_error(
        "TapContext: the hidden branch is not accessible in this window");
  }
}

int TapContext::measure_number(Mode branch, double draw) {
  require_exposed(branch);
  auto result = twostep::measure_number(*carrier_, branch, draw);
  *carrier_ = result.post;
  taps_->push_back({window_.start, branch, TapAction::MeasureNumber});
  return result.outcome;
}

void TapContext::absorb_photon(Mode branch) {
  require_exposed(branch);
  *carrier_ = PureState::vacuum();
  taps_->push_back({window_.start, branch, TapAction::Capture});
}

int branch_qnd(TapContext& ctx, RoundRng& rng, bool destructive) {
  const int outcome =
      ctx.measure_number(ctx.exposed_branch(), rng.next_unit());
  if (destructive && outcome == 1) {
    ctx.absorb_photon(ctx.exposed_branch());
  }
  return outcome;
}

DelayLineOutcome delay_line(const PureState& carrier,
                            const WindowPair& windows, double hold_delay,
                            RoundRng& rng, std::vector<TapEvent>& taps) {
  taps.push_back({windows.branch_a.start, Mode::A, TapAction::Capture});
  // One ring delay later branch b reaches her too; with both packets in hand
  // her decoder reads the state with certainty.
  taps.push_back({windows.branch_b.start, Mode::B, TapAction::Interfere});
  const Detector det = gv_decode(carrier, rng.next_unit());
  const int bit = det == Detector::D1 ? 1 : 0;
  taps.push_back({windows.branch_b.start, std::nullopt, TapAction::Reemit});
  return {bit, encode_gv_bit(bit), hold_delay};
}

DummyOutcome dummy_particle(const PureState& carrier, double announced_t0,
                            const Geometry& g, RoundRng& rng,
                            std::vector<TapEvent>& taps) {
  const double pass = announced_t0 + g.eve_position / g.speed;
  const double second_pass = pass + g.ring_delay;

  // First window: send her own split photon's a-packet toward Bob exactly
  // when the real one would pass, and keep the real one instead.
  taps.push_back({pass, Mode::A, TapAction::Inject});
  taps.push_back({pass, Mode::A, TapAction::Capture});
  PureState dummy = encode_gv_bit(0);  // her pair starts as the plus state

  // Second window: the real branch b arrives, so she holds the whole real
  // pair and reads the bit with certainty.
  taps.push_back({second_pass, Mode::B, TapAction::Interfere});
  const Detector det = gv_decode(carrier, rng.next_unit());
  const int bit = det == Detector::D1 ? 1 : 0;

  // Imprint the learned bit on the held dummy b-packet and release it; it
  // reaches Bob's second beamsplitter exactly on schedule.
  if (bit == 1) {
    dummy = phase_shift(dummy, Mode::B, std::numbers::pi);
    taps.push_back({second_pass, Mode::B, TapAction::PhaseSet});
  }
  taps.push_back({second_pass, Mode::B, TapAction::Reemit});
  return {bit, dummy};
}

MirrorOutcome mirror_team(const PureState& carrier, double path_a,
                          double path_b, const MirrorRoute& route,
                          double speed, double t0, RoundRng& rng,
                          std::vector<TapEvent>& taps) {
  const double at_center_a = t0 + route.a_to_center / speed;
  const double at_center_b = t0 + route.b_to_center / speed;
  taps.push_back({at_center_a, Mode::A, TapAction::Capture});
  taps.push_back({at_center_b, Mode::B, TapAction::Capture});

  const double meet = std::max(at_center_a, at_center_b);
  taps.push_back({meet, std::nullopt, TapAction::Interfere});
  const Detector det = gv_decode(carrier, rng.next_unit());
  const int bit = det == Detector::D1 ? 1 : 0;
  taps.push_back({meet, std::nullopt, TapAction::Reemit});

  return {bit, encode_gv_bit(bit), (route.total_a() - path_a) / speed,
          (route.total_b() - path_b) / speed};
}

InterceptOutcome intercept_resend(const Qubit& carrier, double tap_time,
                                  RoundRng& rng, std::vector<TapEvent>& taps) {
  const Basis basis = rng.next_bit() ? Basis::X : Basis::Z;
  const auto result = measure_basis(carrier, basis, rng.next_unit());
  taps.push_back({tap_time, std::nullopt, TapAction::MeasureNumber});
  taps.push_back({tap_time, std::nullopt, TapAction::Reemit});
  return {result.bit, basis, result.post};
}

const char* to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::GV: return "gv";
    case Protocol::BB84: return "bb84";
    case Protocol::TwoStepInterp: return "two_step";
    default: return "relativistic_gv";
  }
}

const char* to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::None: return "none";
    case StrategyKind::BranchQnd: return "branch_qnd";
    case StrategyKind::DelayLine: return "delay_line";
    case StrategyKind::DummyParticle: return "dummy_particle";
    case StrategyKind::MirrorTeam: return "mirror_team";
    default: return "intercept_resend";
  }
}

const char* to_string(TapAction action) {
  switch (action) {
    case TapAction::MeasureNumber: return "measure_number";
    case TapAction::Capture: return "capture";
    case TapAction::Interfere: return "interfere";
    case TapAction::Inject: return "inject";
    case TapAction::PhaseSet: return "phase_set";
    default: return "reemit";
  }
}

}  // namespace twostep
