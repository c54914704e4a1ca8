#ifndef UXSIM_COMMON_HPP
#define UXSIM_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uxsim {

// Simulation clock in integer microseconds. All event times, delays and slot
// boundaries are exact in this unit, which keeps runs reproducible bit-for-bit.
using TimeUs = std::int64_t;

constexpr TimeUs kUsPerMs = 1000;

inline TimeUs us_from_ms(double ms) { return static_cast<TimeUs>(std::llround(ms * 1000.0)); }
inline double ms_from_us(TimeUs us) { return static_cast<double>(us) / 1000.0; }
inline double s_from_us(TimeUs us) { return static_cast<double>(us) / 1e6; }
inline TimeUs us_from_s(double s) { return static_cast<TimeUs>(std::llround(s * 1e6)); }

// Allowable source bitrates; encoders cannot operate outside this range.
struct RateBounds {
  double min_mbps = 1.0;
  double max_mbps = 50.0;
};

inline double clamp_rate(double rate_mbps, const RateBounds& b) {
  if (rate_mbps < b.min_mbps) return b.min_mbps;
  if (rate_mbps > b.max_mbps) return b.max_mbps;
  return rate_mbps;
}

// Invalid scenario/topology/file input. Carries an optional 1-based line
// number so CLI diagnostics can point at the offending line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg, int line = 0)
      : std::runtime_error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace uxsim

#endif  // UXSIM_COMMON_HPP
