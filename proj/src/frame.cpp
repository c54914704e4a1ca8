#include "uxsim/frame.hpp"

#include <algorithm>
#include <cmath>

namespace uxsim {

std::int64_t frame_size_bits(double rate_mbps, int fps) {
  return std::llround(rate_mbps * 1e6 / static_cast<double>(fps));
}

StallStats playout(const std::vector<FrameRecord>& frames, const PlayoutParams& params) {
  StallStats stats;
  const TimeUs horizon = us_from_s(params.horizon_s);
  const double duration_s = params.horizon_s;

  if (frames.empty()) return stats;

  // Display clock starts at the first decoded frame.
  int first_idx = -1;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].decoded_us >= 0) {
      first_idx = static_cast<int>(i);
      break;
    }
  }
  if (first_idx < 0) {
    // Nothing ever reached the display.
    stats.episodes.push_back({0, horizon});
    stats.msd_ms = ms_from_us(horizon);
    stats.stall_freq_per_s = duration_s > 0.0 ? 1.0 / duration_s : 0.0;
    return stats;
  }

  const TimeUs offset = us_from_ms(params.playout_offset_ms);
  const TimeUs clock0 = frames[static_cast<std::size_t>(first_idx)].decoded_us + offset;

  // next_decode[i]: decode time of the first frame at or after i that decodes,
  // -1 if none. A frame that never decodes keeps the display frozen until the
  // next decoded frame takes over.
  std::vector<TimeUs> next_decode(frames.size(), -1);
  TimeUs carry = -1;
  for (std::size_t i = frames.size(); i-- > 0;) {
    if (frames[i].decoded_us >= 0) carry = frames[i].decoded_us;
    next_decode[i] = carry;
  }

  for (std::size_t i = static_cast<std::size_t>(first_idx); i < frames.size(); ++i) {
    const auto k = static_cast<std::int64_t>(i) - first_idx;
    TimeUs due = clock0 + k * 1000000LL / params.fps;
    if (due >= horizon) break;

    TimeUs shown = next_decode[i];
    TimeUs end = shown >= 0 ? std::min(shown, horizon) : horizon;
    if (end <= due) continue;  // on time

    if (!stats.episodes.empty() && due <= stats.episodes.back().end_us) {
      stats.episodes.back().end_us = std::max(stats.episodes.back().end_us, end);
    } else {
      stats.episodes.push_back({due, end});
    }
  }

  TimeUs msd = 0;
  for (const auto& ep : stats.episodes) msd = std::max(msd, ep.end_us - ep.start_us);
  stats.msd_ms = ms_from_us(msd);
  stats.stall_freq_per_s =
      duration_s > 0.0 ? static_cast<double>(stats.episodes.size()) / duration_s : 0.0;
  return stats;
}

}  // namespace uxsim
