#ifndef UXSIM_METRICS_HPP
#define UXSIM_METRICS_HPP

#include <map>
#include <vector>

#include "uxsim/frame.hpp"
#include "uxsim/sim_core.hpp"

namespace uxsim {

struct UeMetrics {
  int ue_id = 0;
  double avg_bitrate_mbps = 0.0;
  double quality_fraction = 0.0;  // fraction of frames at or above the target
  double msd_ms = 0.0;
  double p99_frame_delay_ms = 0.0;
  double stall_freq_per_s = 0.0;
  int stall_episodes = 0;
  bool satisfied = false;
};

struct RunMetrics {
  std::vector<UeMetrics> per_ue;
  double satisfaction_ratio = 0.0;
};

// Nearest-rank percentile over an unsorted sample. p in [0, 100].
double percentile(std::vector<double> values, double p);

// Satisfaction is strict on both clauses: quality at target for more than 95%
// of frames and a maximum stall duration strictly below d_stall.
bool ue_satisfied(const std::vector<FrameRecord>& frames, double gamma_db, double d_stall_ms,
                  const PlayoutParams& playout_params);

UeMetrics compute_ue_metrics(const std::vector<FrameRecord>& frames, double gamma_db,
                             double d_stall_ms, const PlayoutParams& playout_params);

RunMetrics compute_run_metrics(const SimResult& result, double gamma_db, double d_stall_ms);

// Satisfaction ratios per UE count, over replications.
struct SweepResult {
  std::map<int, std::vector<double>> ratios_by_n;

  void add(int n_ues, double satisfaction_ratio) { ratios_by_n[n_ues].push_back(satisfaction_ratio); }
  double aggregate(int n_ues, bool use_worst = false) const;
};

// Largest UE count whose aggregated satisfaction ratio meets the threshold;
// 0 when none does. Aggregation is the mean over replications by default, the
// worst replication when use_worst is set.
int qoe_capacity(const SweepResult& sweep, double threshold = 0.9, bool use_worst = false);

}  // namespace uxsim

#endif  // UXSIM_METRICS_HPP
