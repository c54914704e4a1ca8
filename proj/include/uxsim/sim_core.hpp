#ifndef UXSIM_SIM_CORE_HPP
#define UXSIM_SIM_CORE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uxsim/allocators.hpp"
#include "uxsim/baselines.hpp"
#include "uxsim/frame.hpp"
#include "uxsim/phy.hpp"
#include "uxsim/qb_model.hpp"

namespace uxsim {

enum class Algorithm { MaxCap, MaxMin, Rtt, Prague };

const char* algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(const std::string& name);

// UX rate controller: re-runs the chosen allocator every t_period over a
// t_win RBG budget and pushes rates to the application servers.
struct UxControllerConfig {
  double t_win_ms = 15.0;
  double t_period_ms = 33.0;
  double target_db = 35.0;  // per-UE quality target gamma
  MaxMinConfig maxmin;
  MaxCapOptions maxcap;
  double signaling_delay_ms = 1.0;  // controller -> AS, defaults to the backhaul delay
  // Utilization headroom on top of the expected HARQ retransmission overhead
  // (1 - target_bler): commanded rates target this fraction of the remaining
  // capacity so queues drain between allocation windows.
  double link_margin = 0.15;

  double link_efficiency(const LinkAbstractionConfig& link) const {
    return (1.0 - link.target_bler) * (1.0 - link_margin);
  }
};

struct SimConfig {
  int n_ues = 1;
  double duration_s = 30.0;
  int fps = 60;
  double backhaul_delay_ms = 1.0;
  double encode_delay_ms = 1.0;
  double decode_delay_ms = 1.0;
  // Client feedback return path: backhaul plus the wait for an uplink
  // opportunity (one DDDSU cycle by default).
  double feedback_uplink_wait_ms = 2.5;
  int harq_delay_slots = 4;
  double playout_offset_ms = 33.0;  // display de-jitter, about two frame periods
  double d_stall_ms = 50.0;
  double frame_jitter_frac = 0.0;  // truncated-Gaussian frame size jitter, off by default
  // Stagger the 60 fps grids of different UEs by a random phase so their
  // bursts do not all land on the same instant.
  bool randomize_frame_phase = true;
  std::uint64_t seed = 1;

  RateBounds rate_bounds;
  SlotConfig slot;
  LinkAbstractionConfig link;
  UxControllerConfig ux;
  RttControllerState rtt;  // template; the initial rate is drawn per UE
  L4SMarkerConfig l4s;
  PragueState prague;      // template; the initial rate is drawn per UE

  bool collect_allocation_events = true;
  bool collect_controller_events = true;

  void validate() const;
  double feedback_return_delay_ms() const { return backhaul_delay_ms + feedback_uplink_wait_ms; }
};

// Per-UE channel and content, built by the scenario layer.
struct UeSetup {
  SinrTrace trace;
  SceneTimeline scenes;
};

struct AllocEvent {
  TimeUs t_us;
  int ue_id;
  double se;
  std::int64_t g_min;  // minimum RBGs to satisfy; -1 when unreachable
  std::int64_t rbgs_allocated;
  double bitrate_mbps;
  bool satisfied;
};

enum class CtrlTrigger { RttReport, Marks, Loss, Allocation };
const char* ctrl_trigger_name(CtrlTrigger t);

struct CtrlEvent {
  TimeUs t_us;
  int ue_id;
  CtrlTrigger trigger;
  double value;  // avg RTT, marked fraction, lost count, or allocated rate
  double new_rate_mbps;
};

struct FlowAccounting {
  std::int64_t bits_generated = 0;
  std::int64_t bits_in_pipe = 0;   // between encoder and gNB queue
  std::int64_t bits_in_queue = 0;
  std::int64_t bits_in_harq = 0;
  std::int64_t bits_delivered = 0;
};

struct SimResult {
  std::vector<std::vector<FrameRecord>> frames_per_ue;
  std::vector<AllocEvent> alloc_events;
  std::vector<CtrlEvent> ctrl_events;
  std::vector<FlowAccounting> accounting;

  // Integrity counters; all zero on a healthy run.
  std::int64_t work_conservation_violations = 0;
  std::int64_t rbg_budget_violations = 0;
  std::int64_t bit_conservation_violations = 0;

  std::int64_t tb_attempts = 0;
  std::int64_t tb_failures = 0;

  double duration_s = 0.0;
  int fps = 60;
  double playout_offset_ms = 10.0;
};

// One cell, one algorithm, end to end. Deterministic for a fixed config and
// setups: identical calls produce identical results.
SimResult run(const SimConfig& cfg, Algorithm algo, const std::vector<UeSetup>& setups);

// Proportional-fair pick used by the downlink scheduler, exposed for direct
// verification. Returns the index of the backlogged candidate maximizing
// instantaneous rate over smoothed throughput, ties to the lowest ue_id;
// -1 when nothing is backlogged.
struct PfCandidate {
  int ue_id = 0;
  double inst_rate_mbps = 0.0;
  double ewma_mbps = 0.0;
  bool backlogged = false;
};

int pf_pick(std::span<const PfCandidate> candidates);
double pf_ewma_update(double ewma_mbps, double served_mbps, double gain = 0.01);

}  // namespace uxsim

#endif  // UXSIM_SIM_CORE_HPP
