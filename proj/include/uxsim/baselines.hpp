#ifndef UXSIM_BASELINES_HPP
#define UXSIM_BASELINES_HPP

#include "uxsim/common.hpp"
#include "uxsim/rng.hpp"

namespace uxsim {

// OTT RTT-feedback rate control: multiplicative up when the reported average
// RTT is below beta_low, multiplicative down above beta_high, hold in between.
struct RttControllerState {
  double rate_mbps = 10.0;
  double report_period_ms = 50.0;
  double window_ms = 100.0;
  double alpha_up = 1.1;
  double alpha_down = 0.9;
  double beta_low_ms = 8.0;
  double beta_high_ms = 10.0;
  RateBounds bounds;

  void validate() const;
};

// New rate after one feedback report; the caller stores it back.
double rtt_update(const RttControllerState& state, double avg_rtt_ms);

// L4S ECN marking: zero below beta_low, one above beta_high, linear between.
struct L4SMarkerConfig {
  double beta_low_ms = 4.0;
  double beta_high_ms = 17.0;

  void validate() const;
};

double marking_probability(double queue_delay_ms, const L4SMarkerConfig& cfg);
bool mark_packet(Rng& rng, double queue_delay_ms, const L4SMarkerConfig& cfg);

// Prague-style scalable congestion control: additive increase on unmarked
// traffic, multiplicative decrease by (1 - m_ecn/2) on marks and by 1/2 on
// loss, decreases at most once per RTT.
struct PragueState {
  double rate_mbps = 10.0;
  double m_ecn = 0.0;               // EWMA of the marked fraction
  double last_md_time_ms = -1e18;   // time of the last multiplicative decrease
  double last_update_time_ms = 0.0;
  double additive_step_mbps = 0.5;  // per RTT, scaled by the unmarked fraction
  double ewma_gain = 1.0 / 16.0;
  RateBounds bounds;
};

PragueState prague_on_feedback(PragueState state, std::int64_t acked_pkts,
                               std::int64_t marked_pkts, std::int64_t lost_pkts, double now_ms,
                               double rtt_ms);

}  // namespace uxsim

#endif  // UXSIM_BASELINES_HPP
