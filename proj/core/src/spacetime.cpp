#include "twostep/spacetime.hpp"

#include <cmath>
#include <stdexcept>

namespace twostep {

void Geometry::validate() const {
  if (!(length > 0.0)) {
    throw std::invalid_argument("geometry: L must be > 0");
  }
  if (!(speed > 0.0)) {
    throw std::invalid_argument("geometry: c must be > 0");
  }
  if (!(packet_width > 0.0)) {
    throw std::invalid_argument("geometry: w must be > 0");
  }
  if (!(ring_delay >= 0.0)) {
    throw std::invalid_argument("geometry: tau must be >= 0");
  }
  if (!(eve_position > 0.0) || !(eve_position < length)) {
    throw std::invalid_argument("geometry: x_E must lie strictly between 0 and L");
  }
}

WorldlineSchedule schedule(double t0, const Geometry& g) {
  const double transit = g.transit_time();
  const double meet = t0 + g.ring_delay + transit;
  WorldlineSchedule plan;
  plan.branch_a = {t0, t0, t0 + transit, meet};
  plan.branch_b = {t0, t0 + g.ring_delay, meet, meet};
  return plan;
}

WindowPair eve_windows(double t0, const Geometry& g) {
  const double pass = g.eve_position / g.speed;
  WindowPair w;
  w.branch_a = {t0 + pass, t0 + pass + g.packet_width};
  w.branch_b = {t0 + g.ring_delay + pass,
                t0 + g.ring_delay + pass + g.packet_width};
  return w;
}

Window channel_occupancy(double t0, const Geometry& g, Mode branch) {
  const double entry = branch == Mode::A ? t0 : t0 + g.ring_delay;
  return {entry, entry + g.transit_time()};
}

TimingVerdict timing_check(double announced_t0, double detection_time,
                           const Geometry& g, double tol) {
  if (tol < 0.0) {
    throw std::invalid_argument("timing_check: tolerance must be >= 0");
  }
  const double expected = announced_t0 + g.ring_delay + g.transit_time();
  const double delta = detection_time - expected;
  return {std::abs(delta) <= tol, delta};
}

}  // namespace twostep
