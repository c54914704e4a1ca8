#ifndef UXSIM_ALLOCATORS_HPP
#define UXSIM_ALLOCATORS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "uxsim/phy.hpp"
#include "uxsim/qb_model.hpp"

namespace uxsim {

// One UE as seen by the UX rate controller at an allocation instant: channel
// state from the network, quality model and target from the application server.
struct UESnapshot {
  int ue_id = 0;
  double se = 0.0;       // spectral efficiency, bits/s/Hz
  QBCurve curve;         // quality-bitrate curve of the current scene
  double target_db = 35.0;
};

struct AllocationInput {
  std::vector<UESnapshot> ues;
  double t_win_ms = 15.0;  // resource allocation window
  int n_rbg = 0;           // total RBG budget within the window
  RateBounds rate_bounds;
  LinkAbstractionConfig link;
  // Fraction of the per-RBG rate treated as usable application goodput. The
  // controller sets this below 1 to leave headroom for HARQ retransmissions;
  // 1.0 makes the arithmetic match the raw link abstraction.
  double link_efficiency = 1.0;
};

struct UEAllocation {
  int ue_id = 0;
  std::int64_t allocated_rbgs = 0;
  double bitrate_mbps = 0.0;  // sustainable source rate, capped at rate_bounds.max
  bool satisfied = false;     // quality at bitrate reaches the UE's target
};

struct MaxMinInfo {
  double level_db = 0.0;  // converged common quality level
  int iterations = 0;     // bisection iterations executed
  bool floor = false;     // no feasible level >= q_min; minimum-rate fallback used
};

struct AllocationOutput {
  std::vector<UEAllocation> per_ue;  // same order as input
  std::int64_t total_rbgs_used = 0;
  std::optional<MaxMinInfo> maxmin;
};

struct MaxCapOptions {
  // Admit a UE whose cumulative demand exactly exhausts the budget. The strict
  // variant rejects it.
  bool strict_budget = false;
  // Hand the remainder of an equal split back out one RBG at a time (ascending
  // ue_id) instead of discarding it.
  bool round_robin_remainder = false;
};

struct MaxMinConfig {
  double q_min_db = 30.0;
  double q_max_db = 40.0;
  double tolerance_db = 0.5;

  void validate() const;
};

// Achievable source rate per allocated RBG, Mbps.
double per_rbg_rate(const UESnapshot& ue, double t_win_ms, const LinkAbstractionConfig& link,
                    double link_efficiency = 1.0);

// Minimum RBGs for the UE to reach its quality target. nullopt when the target
// is unreachable at the maximum allowed rate or the UE has no capacity.
std::optional<std::int64_t> min_rbgs(const UESnapshot& ue, double t_win_ms,
                                     const LinkAbstractionConfig& link,
                                     double link_efficiency = 1.0,
                                     const RateBounds& bounds = {});

// Maximize the number of UEs meeting their quality targets. Under-budget:
// everyone gets their minimum plus an equal share of the surplus. Over-budget:
// cheapest UEs (fewest needed RBGs) are admitted first, the rest split what is
// left. Deterministic; ties sort by ue_id.
AllocationOutput maxcap_allocate(const AllocationInput& input, const MaxCapOptions& opts = {});

// Maximize the minimum quality: bisect on a common quality level until the
// bracket is narrower than the tolerance, then allocate at the highest level
// proven feasible.
AllocationOutput maxmin_allocate(const AllocationInput& input, const MaxMinConfig& cfg = {});

// Bisection core behind maxmin_allocate, exposed for verification against
// synthetic demand functions. rbgs_needed(ue_index, level) returns the RBGs UE
// needs to hold `level`; it must be non-decreasing in level.
struct BisectResult {
  double level_db = 0.0;
  int iterations = 0;
  bool feasible = false;              // some level >= q_min fits the budget
  std::vector<std::int64_t> rbgs;     // demands at level_db (empty if !feasible)
};

BisectResult bisect_common_level(
    const std::function<std::int64_t(int, double)>& rbgs_needed, int n_ues, std::int64_t budget,
    const MaxMinConfig& cfg);

}  // namespace uxsim

#endif  // UXSIM_ALLOCATORS_HPP
