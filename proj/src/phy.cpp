#include "uxsim/phy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uxsim/rng.hpp"

namespace uxsim {

void SinrTrace::validate() const {
  if (!(sample_period_ms > 0.0)) throw ConfigError("SINR trace: sample_period must be > 0");
  if (samples_db.empty()) throw ConfigError("SINR trace: needs at least one sample");
}

double SinrTrace::at_ms(double t_ms) const {
  if (t_ms < 0.0) t_ms = 0.0;
  auto idx = static_cast<std::size_t>(t_ms / sample_period_ms);
  if (idx >= samples_db.size()) idx = samples_db.size() - 1;
  return samples_db[idx];
}

void SlotConfig::validate() const {
  if (pattern.empty()) throw ConfigError("slot pattern must be non-empty");
  for (char c : pattern) {
    if (c != 'D' && c != 'S' && c != 'U') {
      throw ConfigError(std::string("slot pattern: invalid slot type '") + c + "'");
    }
  }
  if (rbgs_per_slot < 1) throw ConfigError("rbgs_per_slot must be >= 1");
  if (scs_khz <= 0 || scs_khz % 15 != 0) throw ConfigError("scs_khz must be a multiple of 15");
  if (s_slot_dl_fraction < 0.0 || s_slot_dl_fraction > 1.0) {
    throw ConfigError("s_slot_dl_fraction must be in [0, 1]");
  }
}

void LinkAbstractionConfig::validate() const {
  if (!(attenuation > 0.0 && attenuation <= 1.0)) {
    throw ConfigError("link attenuation must be in (0, 1]");
  }
  if (!(overhead_fraction >= 0.0 && overhead_fraction < 1.0)) {
    throw ConfigError("link overhead_fraction must be in [0, 1)");
  }
  if (!(target_bler >= 0.0 && target_bler <= 1.0)) {
    throw ConfigError("link target_bler must be in [0, 1]");
  }
  if (prb_per_rbg < 1 || data_symbols_per_slot < 1) {
    throw ConfigError("link prb_per_rbg and data_symbols_per_slot must be >= 1");
  }
}

double sinr_to_se(double sinr_db, const LinkAbstractionConfig& cfg) {
  double snr = std::pow(10.0, sinr_db / 10.0);
  double se = cfg.attenuation * std::log2(1.0 + snr);
  return std::clamp(se, 0.0, cfg.se_max);
}

std::int64_t bits_per_rbg(double se, const LinkAbstractionConfig& cfg) {
  if (se <= 0.0) return 0;
  double re = static_cast<double>(cfg.prb_per_rbg) * 12.0 *
              static_cast<double>(cfg.data_symbols_per_slot);
  double raw = se * re * (1.0 - cfg.overhead_fraction);
  // Transport blocks are byte-aligned.
  auto bytes = static_cast<std::int64_t>(raw / 8.0);
  return bytes * 8;
}

int dl_slots_in_window(double t_win_ms, const SlotConfig& slot) {
  if (!(t_win_ms > 0.0)) throw std::invalid_argument("dl_slots_in_window: t_win must be > 0");
  auto n_slots = static_cast<std::int64_t>(t_win_ms / slot.slot_ms() + 1e-9);
  std::int64_t d = 0, s = 0;
  const auto len = static_cast<std::int64_t>(slot.pattern.size());
  // Count whole cycles, then walk the remainder.
  std::int64_t d_cycle = std::count(slot.pattern.begin(), slot.pattern.end(), 'D');
  std::int64_t s_cycle = std::count(slot.pattern.begin(), slot.pattern.end(), 'S');
  d += (n_slots / len) * d_cycle;
  s += (n_slots / len) * s_cycle;
  for (std::int64_t i = 0; i < n_slots % len; ++i) {
    if (slot.pattern[static_cast<std::size_t>(i)] == 'D') ++d;
    if (slot.pattern[static_cast<std::size_t>(i)] == 'S') ++s;
  }
  return static_cast<int>(static_cast<double>(d) +
                          std::floor(slot.s_slot_dl_fraction * static_cast<double>(s) + 1e-9));
}

int rbg_budget(double t_win_ms, const SlotConfig& slot) {
  return dl_slots_in_window(t_win_ms, slot) * slot.rbgs_per_slot;
}

SinrTrace synthesize_trace(const TraceSpec& spec, std::uint64_t seed) {
  if (!(spec.duration_s > 0.0) || !(spec.sample_period_ms > 0.0)) {
    throw ConfigError("trace spec: duration and sample_period must be > 0");
  }
  auto n = static_cast<std::size_t>(std::ceil(spec.duration_s * 1000.0 / spec.sample_period_ms));
  if (n == 0) n = 1;

  SinrTrace trace;
  trace.sample_period_ms = spec.sample_period_ms;
  trace.samples_db.reserve(n);

  switch (spec.kind) {
    case TraceKind::Constant:
      trace.samples_db.assign(n, spec.level_db);
      break;
    case TraceKind::StepDrop: {
      for (std::size_t i = 0; i < n; ++i) {
        double t_s = static_cast<double>(i) * spec.sample_period_ms / 1000.0;
        trace.samples_db.push_back(t_s < spec.drop_at_s ? spec.level_db : spec.drop_to_db);
      }
      break;
    }
    case TraceKind::RandomWalk: {
      if (!(spec.min_db < spec.max_db)) throw ConfigError("trace spec: min_db must be < max_db");
      Rng rng(derive_seed(seed));
      double x = std::clamp(spec.level_db, spec.min_db, spec.max_db);
      for (std::size_t i = 0; i < n; ++i) {
        trace.samples_db.push_back(x);
        x += spec.revert * (spec.level_db - x) + rng.gaussian(0.0, spec.sigma_db);
        x = std::clamp(x, spec.min_db, spec.max_db);
      }
      break;
    }
  }
  return trace;
}

SinrTrace load_sinr_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open SINR trace file: " + path);

  SinrTrace trace;
  trace.sample_period_ms = 0.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (first == "sample_period_ms") {
      if (!(ss >> trace.sample_period_ms) || !(trace.sample_period_ms > 0.0)) {
        throw ConfigError("SINR trace: bad sample_period_ms header", lineno);
      }
      continue;
    }
    if (trace.sample_period_ms <= 0.0) {
      throw ConfigError("SINR trace: missing 'sample_period_ms <value>' header", lineno);
    }
    try {
      trace.samples_db.push_back(std::stod(first));
    } catch (const std::exception&) {
      throw ConfigError("SINR trace: expected a dB value, got '" + first + "'", lineno);
    }
  }
  trace.validate();
  return trace;
}

void save_sinr_trace(const SinrTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write SINR trace file: " + path);
  out << "sample_period_ms " << trace.sample_period_ms << "\n";
  char buf[32];
  for (double v : trace.samples_db) {
    std::snprintf(buf, sizeof(buf), "%.4f\n", v);
    out << buf;
  }
}

}  // namespace uxsim
