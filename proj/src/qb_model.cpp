#include "uxsim/qb_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uxsim/rng.hpp"

namespace uxsim {

void QBCurve::validate() const {
  if (!(slope_db > 0.0)) throw std::invalid_argument("QBCurve: slope must be > 0");
  if (!(q_floor_db < q_ceil_db)) throw std::invalid_argument("QBCurve: q_floor must be < q_ceil");
  if (!(r_ref_mbps > 0.0)) throw std::invalid_argument("QBCurve: r_ref must be > 0");
}

double evaluate(const QBCurve& curve, double rate_mbps, const RateBounds& bounds) {
  if (rate_mbps < bounds.min_mbps || rate_mbps > bounds.max_mbps) {
    throw std::domain_error("evaluate: rate " + std::to_string(rate_mbps) +
                            " Mbps outside allowable source bitrates");
  }
  double q = curve.q_ref_db + curve.slope_db * std::log2(rate_mbps / curve.r_ref_mbps);
  return std::clamp(q, curve.q_floor_db, curve.q_ceil_db);
}

std::optional<double> invert(const QBCurve& curve, double target_db, const RateBounds& bounds) {
  if (target_db <= evaluate(curve, bounds.min_mbps, bounds)) return bounds.min_mbps;
  if (target_db > evaluate(curve, bounds.max_mbps, bounds)) return std::nullopt;
  // Unclamped region: analytic inverse of the log form.
  double r = curve.r_ref_mbps * std::exp2((target_db - curve.q_ref_db) / curve.slope_db);
  return std::clamp(r, bounds.min_mbps, bounds.max_mbps);
}

SceneTimeline sample_scene_timeline(const SceneProcess& process, double horizon_s) {
  if (process.library.empty()) throw ConfigError("scene process has an empty scene library");
  if (!(process.mean_duration_s > 0.0)) throw ConfigError("scene mean_duration must be > 0");
  if (!(horizon_s > 0.0)) throw std::invalid_argument("sample_scene_timeline: horizon must be > 0");

  SceneTimeline tl;
  tl.library = process.library;
  tl.horizon_s = horizon_s;

  Rng rng(derive_seed(process.rng_seed));
  const int n = static_cast<int>(process.library.size());
  if (n == 1) {
    tl.segments.push_back({0.0, 0});
    return tl;
  }
  int scene = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
  double t = 0.0;
  while (t < horizon_s) {
    tl.segments.push_back({t, scene});
    t += rng.exponential(process.mean_duration_s);
    // Switch to a different scene; self-transitions would be invisible.
    int next = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n - 1)));
    scene = next >= scene ? next + 1 : next;
  }
  return tl;
}

static const SceneTimeline::Segment& segment_at(const SceneTimeline& timeline, double t_s) {
  if (t_s < 0.0 || t_s >= timeline.horizon_s || timeline.segments.empty()) {
    throw std::domain_error("curve_at: time " + std::to_string(t_s) + " s outside timeline");
  }
  // First segment with start > t, step back one. Segments are half-open.
  auto it = std::upper_bound(
      timeline.segments.begin(), timeline.segments.end(), t_s,
      [](double t, const SceneTimeline::Segment& seg) { return t < seg.start_s; });
  return *(it - 1);
}

const QBCurve& curve_at(const SceneTimeline& timeline, double t_s) {
  return timeline.library[segment_at(timeline, t_s).scene_index].curve;
}

const Scene& scene_at(const SceneTimeline& timeline, double t_s) {
  return timeline.library[segment_at(timeline, t_s).scene_index];
}

std::vector<Scene> default_scene_library() {
  // invert(35 dB) = 19 / 13 / 8 / 3 Mbps respectively.
  return {
      {"scene1", {35.0, 19.0, 5.0, 20.0, 45.0}, "complex"},
      {"scene3", {35.0, 13.0, 4.5, 20.0, 45.0}, "moderate"},
      {"scene4", {35.0, 8.0, 4.0, 20.0, 45.0}, "mild"},
      {"scene2", {35.0, 3.0, 3.0, 20.0, 45.0}, "simple"},
  };
}

std::vector<Scene> load_scene_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scene library file: " + path);

  std::vector<Scene> scenes;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    Scene s;
    if (!(ss >> s.scene_id)) continue;  // blank line
    if (!(ss >> s.complexity_label >> s.curve.q_ref_db >> s.curve.r_ref_mbps >>
          s.curve.slope_db >> s.curve.q_floor_db >> s.curve.q_ceil_db)) {
      throw ConfigError("scene library: expected 'id complexity q_ref r_ref slope q_floor q_ceil'",
                        lineno);
    }
    try {
      s.curve.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("scene library: ") + e.what(), lineno);
    }
    for (const auto& prev : scenes) {
      if (prev.scene_id == s.scene_id) {
        throw ConfigError("scene library: duplicate scene_id '" + s.scene_id + "'", lineno);
      }
    }
    scenes.push_back(std::move(s));
  }
  if (scenes.empty()) throw ConfigError("scene library is empty: " + path);
  return scenes;
}

}  // namespace uxsim
