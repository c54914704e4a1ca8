#include "uxsim/baselines.hpp"

#include <algorithm>

namespace uxsim {

void RttControllerState::validate() const {
  if (!(alpha_down > 0.0 && alpha_down < 1.0 && alpha_up > 1.0)) {
    throw ConfigError("rtt controller: need 0 < alpha_down < 1 < alpha_up");
  }
  if (!(beta_low_ms < beta_high_ms)) {
    throw ConfigError("rtt controller: beta_low must be < beta_high");
  }
  if (!(report_period_ms > 0.0 && window_ms > 0.0)) {
    throw ConfigError("rtt controller: periods must be > 0");
  }
}

double rtt_update(const RttControllerState& state, double avg_rtt_ms) {
  double rate = state.rate_mbps;
  if (avg_rtt_ms < state.beta_low_ms) {
    rate *= state.alpha_up;
  } else if (avg_rtt_ms > state.beta_high_ms) {
    rate *= state.alpha_down;
  }
  return clamp_rate(rate, state.bounds);
}

void L4SMarkerConfig::validate() const {
  if (!(beta_low_ms >= 0.0 && beta_low_ms < beta_high_ms)) {
    throw ConfigError("l4s marker: need 0 <= beta_low < beta_high");
  }
}

double marking_probability(double queue_delay_ms, const L4SMarkerConfig& cfg) {
  double p = (queue_delay_ms - cfg.beta_low_ms) / (cfg.beta_high_ms - cfg.beta_low_ms);
  return std::clamp(p, 0.0, 1.0);
}

bool mark_packet(Rng& rng, double queue_delay_ms, const L4SMarkerConfig& cfg) {
  return rng.bernoulli(marking_probability(queue_delay_ms, cfg));
}

PragueState prague_on_feedback(PragueState state, std::int64_t acked_pkts,
                               std::int64_t marked_pkts, std::int64_t lost_pkts, double now_ms,
                               double rtt_ms) {
  if (acked_pkts > 0) {
    double frac = static_cast<double>(marked_pkts) / static_cast<double>(acked_pkts);
    state.m_ecn += state.ewma_gain * (frac - state.m_ecn);
  }

  bool md_due = now_ms - state.last_md_time_ms >= rtt_ms;
  if (lost_pkts > 0 && md_due) {
    state.rate_mbps *= 0.5;
    state.last_md_time_ms = now_ms;
  } else if (marked_pkts > 0 && md_due) {
    state.rate_mbps *= 1.0 - state.m_ecn / 2.0;
    state.last_md_time_ms = now_ms;
  } else if (acked_pkts > 0 && rtt_ms > 0.0) {
    // Additive increase, normalized to one step per RTT of unmarked traffic.
    double unmarked_frac =
        static_cast<double>(acked_pkts - marked_pkts) / static_cast<double>(acked_pkts);
    double elapsed = std::max(0.0, now_ms - state.last_update_time_ms);
    state.rate_mbps += state.additive_step_mbps * unmarked_frac * std::min(elapsed / rtt_ms, 4.0);
  }

  state.rate_mbps = clamp_rate(state.rate_mbps, state.bounds);
  state.last_update_time_ms = now_ms;
  return state;
}

}  // namespace uxsim
