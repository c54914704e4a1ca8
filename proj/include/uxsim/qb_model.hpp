#ifndef UXSIM_QB_MODEL_HPP
#define UXSIM_QB_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "uxsim/common.hpp"

namespace uxsim {

// Quality-Bitrate curve: PSNR as a logarithmic function of encoding bitrate,
// clamped to [q_floor, q_ceil].
//
//   q(r) = clamp(q_ref + slope * log2(r / r_ref), q_floor, q_ceil)
//
// Complex scenes have a large r_ref (they need more bits for the same PSNR),
// simple scenes a small one.
struct QBCurve {
  double q_ref_db = 35.0;    // PSNR at the reference bitrate
  double r_ref_mbps = 10.0;  // reference bitrate
  double slope_db = 4.0;     // dB gained per doubling of bitrate
  double q_floor_db = 20.0;
  double q_ceil_db = 45.0;

  void validate() const;  // throws std::invalid_argument on a malformed curve
};

// PSNR at `rate_mbps`. The rate must lie within the allowable source bitrate
// range; outside it the encoder cannot operate and the question is ill-posed.
double evaluate(const QBCurve& curve, double rate_mbps, const RateBounds& bounds = {});

// Minimum rate in [bounds.min, bounds.max] achieving at least `target_db`.
// Returns nullopt when even bounds.max cannot reach the target; callers decide
// what an unreachable target means (allocators treat such UEs specially).
std::optional<double> invert(const QBCurve& curve, double target_db, const RateBounds& bounds = {});

struct Scene {
  std::string scene_id;
  QBCurve curve;
  std::string complexity_label;
};

// Per-UE scene-switching process: i.i.d. exponential segment durations over an
// ordered scene library, first scene chosen uniformly.
struct SceneProcess {
  std::vector<Scene> library;
  double mean_duration_s = 3.5;
  std::uint64_t rng_seed = 0;
};

struct SceneTimeline {
  struct Segment {
    double start_s;  // half-open [start, next.start)
    int scene_index;
  };
  std::vector<Segment> segments;
  std::vector<Scene> library;
  double horizon_s = 0.0;
};

// Tiles [0, horizon) with scene segments. Deterministic for a fixed seed.
SceneTimeline sample_scene_timeline(const SceneProcess& process, double horizon_s);

const QBCurve& curve_at(const SceneTimeline& timeline, double t_s);
const Scene& scene_at(const SceneTimeline& timeline, double t_s);

// Four scenes spanning 35 dB requirements of 3/8/13/19 Mbps: a complex and a
// simple anchor with two interpolated complexities between them.
std::vector<Scene> default_scene_library();

// One record per scene: scene_id complexity q_ref_db r_ref_mbps slope_db
// q_floor_db q_ceil_db. '#' starts a comment. Units: dB and Mbps.
std::vector<Scene> load_scene_library(const std::string& path);

}  // namespace uxsim

#endif  // UXSIM_QB_MODEL_HPP
