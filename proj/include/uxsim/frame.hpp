#ifndef UXSIM_FRAME_HPP
#define UXSIM_FRAME_HPP

#include <cstdint>
#include <vector>

#include "uxsim/common.hpp"

namespace uxsim {

// One video frame (PDU set) on its way from encoder to display. Timestamps are
// stamped as the frame moves through the pipeline; -1 marks "not yet".
struct FrameRecord {
  int ue_id = 0;
  int frame_index = 0;
  std::int64_t size_bits = 0;
  TimeUs gen_us = 0;
  TimeUs enqueue_us = -1;
  TimeUs delivered_us = -1;
  TimeUs decoded_us = -1;
  double encoding_rate_mbps = 0.0;
  double quality_db = 0.0;
  std::int64_t bits_remaining = 0;  // undelivered bits during the run

  bool delivered() const { return delivered_us >= 0; }
  double delay_ms() const { return ms_from_us(decoded_us - gen_us); }
};

// Deterministic average frame size; jitter, when enabled, is applied on top.
std::int64_t frame_size_bits(double rate_mbps, int fps);

struct PlayoutParams {
  int fps = 60;
  double playout_offset_ms = 10.0;
  double horizon_s = 0.0;  // run duration; open stalls close here
};

struct StallStats {
  struct Episode {
    TimeUs start_us;
    TimeUs end_us;
  };
  std::vector<Episode> episodes;
  double msd_ms = 0.0;            // maximum stall duration
  double stall_freq_per_s = 0.0;  // episodes per second of run time
};

// Zero-buffer playout against a fixed display clock: frame i is due at
// first_decode + offset + i/fps; a late frame freezes the display from its due
// time until it (or, if it never arrives, the next decoded frame) decodes.
// Overlapping freezes merge into one episode. Frames must be in index order.
StallStats playout(const std::vector<FrameRecord>& frames, const PlayoutParams& params);

}  // namespace uxsim

#endif  // UXSIM_FRAME_HPP
