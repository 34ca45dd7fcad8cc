#pragma once

// Worldline bookkeeping for the interferometer geometry: Alice sits at x = 0,
// Bob at x = L, Eve at a fixed x_E in between. Branch a crosses the channel
// first and is held in a storage ring at Bob; branch b is held in a ring at
// Alice and crosses one ring delay later. Both wavepackets meet at Bob's
// second beamsplitter at the same instant.

#include "twostep/quantum.hpp"

namespace twostep {

struct Geometry {
  double length = 1.0;        // L, channel length (Alice at x=0, Bob at x=L)
  double speed = 1.0;         // c, signal speed
  double ring_delay = 1.5;    // tau, applied to branch b at Alice and branch a at Bob
  double eve_position = 0.5;  // x_E, strictly between Alice and Bob
  double packet_width = 0.1;  // w, wavepacket duration

  double transit_time() const { return length / speed; }

  /// Eve's two access windows never overlap.
  bool windows_disjoint() const { return ring_delay > packet_width; }
  /// The branches are never in the channel at the same time (leading edges).
  bool occupancy_disjoint() const { return ring_delay > transit_time(); }
  /// Both of the above, with the full packet width accounted for.
  bool secure() const { return ring_delay > transit_time() + packet_width; }

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct Window {
  double start = 0.0;
  double end = 0.0;

  double duration() const { return end - start; }
  bool contains(double t) const { return t >= start && t <= end; }
  bool overlaps(const Window& other) const {
    return start <= other.end && other.start <= end;
  }
};

struct BranchTimeline {
  double emission;       // leaves Alice's first beamsplitter
  double channel_entry;  // enters the channel (after any ring at Alice)
  double arrival;        // leading edge reaches Bob
  double recombine;      // reaches Bob's second beamsplitter
};

struct WorldlineSchedule {
  BranchTimeline branch_a;
  BranchTimeline branch_b;

  double recombine_time() const { return branch_a.recombine; }
};

/// Kinematics of one round emitted at t0. Branch a transits during
/// [t0, t0 + L/c] and waits in Bob's ring; branch b waits in Alice's ring
/// and transits during [t0 + tau, t0 + tau + L/c]. Both recombine at
/// t0 + tau + L/c.
WorldlineSchedule schedule(double t0, const Geometry& g);

struct WindowPair {
  Window branch_a;
  Window branch_b;

  const Window& for_mode(Mode mode) const {
    return mode == Mode::A ? branch_a : branch_b;
  }
  bool disjoint() const { return !branch_a.overlaps(branch_b); }
};

/// The two intervals during which a wavepacket passes Eve's position; in each
/// she can reach exactly one branch. Disjoint whenever tau > w.
WindowPair eve_windows(double t0, const Geometry& g);

/// Interval during which `branch` has its leading edge inside the channel.
Window channel_occupancy(double t0, const Geometry& g, Mode branch);

struct TimingVerdict {
  bool ok = true;
  double delta = 0.0;  // detection_time minus expected, signed
};

/// Bob's arrival-time check against the announced emission time. The
/// expected detection is announced_t0 + tau + L/c.
TimingVerdict timing_check(double announced_t0, double detection_time,
                           const Geometry& g, double tol);

}  // namespace twostep
