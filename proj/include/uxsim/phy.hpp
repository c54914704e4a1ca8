#ifndef UXSIM_PHY_HPP
#define UXSIM_PHY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "uxsim/common.hpp"

namespace uxsim {

// SINR samples on a fixed grid, zero-order hold between samples; lookups past
// the end hold the last value.
struct SinrTrace {
  double sample_period_ms = 10.0;
  std::vector<double> samples_db;

  double at_ms(double t_ms) const;
  double duration_ms() const { return sample_period_ms * static_cast<double>(samples_db.size()); }
  void validate() const;
};

// TDD slot structure. Slot duration follows the subcarrier spacing:
// 30 kHz -> 0.5 ms slots.
struct SlotConfig {
  int scs_khz = 30;
  std::string pattern = "DDDSU";  // cyclic, characters D/S/U
  int rbgs_per_slot = 4;
  // Fraction of an S slot counted as DL capacity. Defaults to none.
  double s_slot_dl_fraction = 0.0;

  double slot_ms() const { return 15.0 / static_cast<double>(scs_khz); }
  TimeUs slot_us() const { return us_from_ms(slot_ms()); }
  void validate() const;
};

// Attenuated-Shannon link abstraction standing in for MCS/TBS tables. Bits per
// RBG counts data REs (12 subcarriers x data symbols per PRB) net of overhead,
// rounded down to whole bytes.
struct LinkAbstractionConfig {
  double se_max = 7.4;            // bits/s/Hz cap
  double attenuation = 0.75;      // Shannon attenuation factor
  int prb_per_rbg = 68;           // 100 MHz @ 30 kHz SCS split into 4 RBGs
  int data_symbols_per_slot = 12;
  double overhead_fraction = 0.14;
  double target_bler = 0.10;      // first-transmission block error rate

  void validate() const;
};

double sinr_to_se(double sinr_db, const LinkAbstractionConfig& cfg);
std::int64_t bits_per_rbg(double se, const LinkAbstractionConfig& cfg);

// Number of DL slots fully contained in t_win (S slots weighted by
// s_slot_dl_fraction, floor at the end). Windows shorter than one slot count 0.
int dl_slots_in_window(double t_win_ms, const SlotConfig& slot);
int rbg_budget(double t_win_ms, const SlotConfig& slot);

// Synthetic trace generators.
enum class TraceKind { Constant, RandomWalk, StepDrop };

struct TraceSpec {
  TraceKind kind = TraceKind::Constant;
  double sample_period_ms = 10.0;
  double duration_s = 30.0;
  // Constant / RandomWalk: base level. StepDrop: level before the drop.
  double level_db = 20.0;
  // RandomWalk: mean-reverting walk parameters and hard bounds.
  double sigma_db = 0.6;
  double revert = 0.05;
  double min_db = -5.0;
  double max_db = 35.0;
  // StepDrop.
  double drop_to_db = 0.0;
  double drop_at_s = 5.0;
};

SinrTrace synthesize_trace(const TraceSpec& spec, std::uint64_t seed);

// Trace file format: optional '#' comments, a "sample_period_ms <value>"
// header line, then one SINR dB value per line.
SinrTrace load_sinr_trace(const std::string& path);
void save_sinr_trace(const SinrTrace& trace, const std::string& path);

}  // namespace uxsim

#endif  // UXSIM_PHY_HPP
