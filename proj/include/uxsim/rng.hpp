#ifndef UXSIM_RNG_HPP
#define UXSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace uxsim {

// splitmix64 step; used to derive independent stream seeds from a master seed
// plus integer tags. The mapping is fixed so the same (seed, tags) always
// names the same stream.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed) { return mix64(seed); }

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, Tags... rest) {
  return derive_seed(mix64(seed ^ mix64(tag)), rest...);
}

// mt19937_64 engine with hand-rolled distributions. The standard library's
// distribution objects are implementation-defined, so frozen test values and
// cross-platform reproducibility require owning the uniform-to-variate maps.
class Rng {
 public:
  Rng() : engine_(0x5eed5eed5eed5eedULL) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t uniform_int(std::uint64_t n) {
    // Rejection-free modulo is biased for huge n; n here is always small.
    return engine_() % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  // Box-Muller, one variate per call.
  double gaussian(double mean, double sigma) {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace uxsim

#endif  // UXSIM_RNG_HPP
