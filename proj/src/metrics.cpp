#include "uxsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uxsim {

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile: empty input");
  if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile: p outside [0, 100]");
  std::sort(values.begin(), values.end());
  if (p == 0.0) return values.front();
  auto n = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n - 1e-9));  // 1-based
  return values[rank - 1];
}

UeMetrics compute_ue_metrics(const std::vector<FrameRecord>& frames, double gamma_db,
                             double d_stall_ms, const PlayoutParams& playout_params) {
  UeMetrics m;
  if (frames.empty()) return m;
  m.ue_id = frames.front().ue_id;

  double rate_sum = 0.0;
  std::int64_t at_target = 0;
  std::vector<double> delays;
  delays.reserve(frames.size());
  for (const auto& f : frames) {
    rate_sum += f.encoding_rate_mbps;
    if (f.quality_db >= gamma_db) ++at_target;
    if (f.decoded_us >= 0) delays.push_back(f.delay_ms());
  }
  m.avg_bitrate_mbps = rate_sum / static_cast<double>(frames.size());
  m.quality_fraction = static_cast<double>(at_target) / static_cast<double>(frames.size());
  m.p99_frame_delay_ms = delays.empty() ? ms_from_us(us_from_s(playout_params.horizon_s))
                                        : percentile(delays, 99.0);

  StallStats stalls = playout(frames, playout_params);
  m.msd_ms = stalls.msd_ms;
  m.stall_freq_per_s = stalls.stall_freq_per_s;
  m.stall_episodes = static_cast<int>(stalls.episodes.size());

  m.satisfied = m.quality_fraction > 0.95 && m.msd_ms < d_stall_ms;
  return m;
}

bool ue_satisfied(const std::vector<FrameRecord>& frames, double gamma_db, double d_stall_ms,
                  const PlayoutParams& playout_params) {
  if (frames.empty()) throw std::invalid_argument("ue_satisfied: empty frame set");
  return compute_ue_metrics(frames, gamma_db, d_stall_ms, playout_params).satisfied;
}

RunMetrics compute_run_metrics(const SimResult& result, double gamma_db, double d_stall_ms) {
  RunMetrics rm;
  PlayoutParams params{result.fps, result.playout_offset_ms, result.duration_s};
  int satisfied = 0;
  for (const auto& frames : result.frames_per_ue) {
    rm.per_ue.push_back(compute_ue_metrics(frames, gamma_db, d_stall_ms, params));
    if (rm.per_ue.back().satisfied) ++satisfied;
  }
  rm.satisfaction_ratio = rm.per_ue.empty()
                              ? 0.0
                              : static_cast<double>(satisfied) / static_cast<double>(rm.per_ue.size());
  return rm;
}

double SweepResult::aggregate(int n_ues, bool use_worst) const {
  auto it = ratios_by_n.find(n_ues);
  if (it == ratios_by_n.end() || it->second.empty()) {
    throw std::invalid_argument("sweep: no data for n_ues=" + std::to_string(n_ues));
  }
  if (use_worst) return *std::min_element(it->second.begin(), it->second.end());
  double sum = 0.0;
  for (double v : it->second) sum += v;
  return sum / static_cast<double>(it->second.size());
}

int qoe_capacity(const SweepResult& sweep, double threshold, bool use_worst) {
  int capacity = 0;
  for (const auto& [n, ratios] : sweep.ratios_by_n) {
    if (sweep.aggregate(n, use_worst) >= threshold) capacity = std::max(capacity, n);
  }
  return capacity;
}

}  // namespace uxsim
