#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "uxsim/qb_model.hpp"
#include "uxsim/rng.hpp"

using namespace uxsim;

namespace {

QBCurve scene1() { return default_scene_library().front().curve; }  // complex, 19 Mbps @ 35 dB
QBCurve scene2() { return {35.0, 3.0, 3.0, 20.0, 45.0}; }           // simple, 3 Mbps @ 35 dB

QBCurve random_curve(Rng& rng) {
  QBCurve c;
  c.q_ref_db = rng.uniform(28.0, 42.0);
  c.r_ref_mbps = rng.uniform(1.5, 30.0);
  c.slope_db = rng.uniform(2.0, 8.0);
  c.q_floor_db = rng.uniform(10.0, 22.0);
  c.q_ceil_db = rng.uniform(43.0, 55.0);
  return c;
}

}  // namespace

TEST_CASE("evaluate hits the library anchor points") {
  CHECK(evaluate(scene1(), 19.0) == doctest::Approx(35.0).epsilon(1e-12));
  CHECK(evaluate(scene2(), 3.0) == doctest::Approx(35.0).epsilon(1e-12));
}

TEST_CASE("evaluate at the reference rate returns q_ref") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    QBCurve c = random_curve(rng);
    if (c.q_ref_db < c.q_floor_db || c.q_ref_db > c.q_ceil_db) continue;
    if (c.r_ref_mbps < 1.0 || c.r_ref_mbps > 50.0) continue;
    CHECK(evaluate(c, c.r_ref_mbps) == doctest::Approx(c.q_ref_db).epsilon(1e-12));
  }
}

TEST_CASE("evaluate closed form at a doubled rate") {
  // (35, 3, 3, 20, 45) at 6 Mbps: one doubling above the reference.
  CHECK(evaluate(scene2(), 6.0) == doctest::Approx(38.0).epsilon(1e-12));
}

TEST_CASE("evaluate rejects rates outside the allowable range") {
  CHECK_THROWS_AS(evaluate(scene1(), 0.5), std::domain_error);
  CHECK_THROWS_AS(evaluate(scene1(), 50.001), std::domain_error);
}

TEST_CASE("evaluate clamps to floor and ceiling") {
  QBCurve c = scene1();
  CHECK(evaluate(c, 1.0) == doctest::Approx(c.q_floor_db));  // 35 - 5*log2(19) < 20
  QBCurve steep{40.0, 2.0, 8.0, 20.0, 45.0};
  CHECK(evaluate(steep, 50.0) == doctest::Approx(45.0));
}

TEST_CASE("invert recovers the anchor bitrates") {
  auto r1 = invert(scene1(), 35.0);
  auto r2 = invert(scene2(), 35.0);
  REQUIRE(r1.has_value());
  REQUIRE(r2.has_value());
  CHECK(*r1 == doctest::Approx(19.0).epsilon(1e-9));
  CHECK(*r2 == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(*r1 > *r2);  // complex scenes cost more for the same quality
}

TEST_CASE("invert round-trips through evaluate on the unclamped region") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    QBCurve c = random_curve(rng);
    double r = rng.uniform(1.0, 50.0);
    double q = evaluate(c, r);
    if (q <= c.q_floor_db || q >= c.q_ceil_db) continue;  // clamped: not invertible
    auto back = invert(c, q);
    REQUIRE(back.has_value());
    CHECK(*back == doctest::Approx(r).epsilon(1e-9));
  }
}

TEST_CASE("invert edge cases") {
  // Below the value at R_min: the minimum rate already suffices.
  CHECK(*invert(scene2(), 10.0) == doctest::Approx(1.0));
  // Above the value at R_max: unreachable.
  QBCurve c = scene1();  // evaluate(50) = 35 + 5*log2(50/19) ~ 41.98
  CHECK(!invert(c, 43.0).has_value());
  CHECK(invert(c, 41.0).has_value());
}

TEST_CASE("invert is the minimal sufficient rate") {
  Rng rng(13);
  for (int i = 0; i < 500; ++i) {
    QBCurve c = random_curve(rng);
    double target = rng.uniform(c.q_floor_db + 0.5, c.q_ceil_db - 0.5);
    auto r = invert(c, target);
    if (!r) continue;
    CHECK(evaluate(c, *r) >= target - 1e-9);
    if (*r > 1.0 + 1e-6) {
      CHECK(evaluate(c, *r - 1e-6) < target);
    }
  }
}

TEST_CASE("evaluate is non-decreasing in rate") {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    QBCurve c = random_curve(rng);
    double r1 = rng.uniform(1.0, 50.0);
    double r2 = rng.uniform(1.0, 50.0);
    if (r1 > r2) std::swap(r1, r2);
    CHECK(evaluate(c, r1) <= evaluate(c, r2) + 1e-12);
  }
}

TEST_CASE("curve validation rejects malformed curves") {
  QBCurve bad = scene1();
  bad.slope_db = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = scene1();
  bad.q_floor_db = bad.q_ceil_db;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("single-scene library yields one segment") {
  SceneProcess p{{default_scene_library().front()}, 3.5, 42};
  SceneTimeline tl = sample_scene_timeline(p, 30.0);
  REQUIRE(tl.segments.size() == 1);
  CHECK(tl.segments[0].start_s == 0.0);
  CHECK(tl.segments[0].scene_index == 0);
}

TEST_CASE("timelines are deterministic per seed and differ across seeds") {
  SceneProcess p{default_scene_library(), 3.5, 42};
  SceneTimeline a = sample_scene_timeline(p, 30.0);
  SceneTimeline b = sample_scene_timeline(p, 30.0);
  REQUIRE(a.segments.size() == b.segments.size());
  for (std::size_t i = 0; i < a.segments.size(); ++i) {
    CHECK(a.segments[i].start_s == b.segments[i].start_s);
    CHECK(a.segments[i].scene_index == b.segments[i].scene_index);
  }
  p.rng_seed = 43;
  SceneTimeline c = sample_scene_timeline(p, 30.0);
  bool differs = c.segments.size() != a.segments.size();
  for (std::size_t i = 0; !differs && i < a.segments.size(); ++i) {
    differs = a.segments[i].start_s != c.segments[i].start_s;
  }
  CHECK(differs);
}

TEST_CASE("segment count matches the renewal-process mean") {
  // Exponential durations with mean 3.5 s over 35 s: arrivals are Poisson with
  // mean 10, so the expected segment count is 10 + 1.
  SceneProcess p{default_scene_library(), 3.5, 0};
  double total = 0.0;
  const int trials = 2000;
  for (int s = 0; s < trials; ++s) {
    p.rng_seed = static_cast<std::uint64_t>(s);
    total += static_cast<double>(sample_scene_timeline(p, 35.0).segments.size());
  }
  double mean = total / trials;
  CHECK(mean == doctest::Approx(11.0).epsilon(0.03));
}

TEST_CASE("timelines tile the horizon with no gaps or overlaps") {
  SceneProcess p{default_scene_library(), 3.5, 0};
  for (int s = 0; s < 50; ++s) {
    p.rng_seed = static_cast<std::uint64_t>(s);
    SceneTimeline tl = sample_scene_timeline(p, 30.0);
    REQUIRE(!tl.segments.empty());
    CHECK(tl.segments.front().start_s == 0.0);
    for (std::size_t i = 1; i < tl.segments.size(); ++i) {
      CHECK(tl.segments[i].start_s > tl.segments[i - 1].start_s);
      CHECK(tl.segments[i].start_s < 30.0);
    }
  }
}

TEST_CASE("curve_at boundary semantics and linear-scan oracle") {
  SceneProcess p{default_scene_library(), 2.0, 5};
  SceneTimeline tl = sample_scene_timeline(p, 20.0);

  CHECK(&curve_at(tl, 0.0) == &tl.library[tl.segments[0].scene_index].curve);
  if (tl.segments.size() > 1) {
    double t_switch = tl.segments[1].start_s;
    CHECK(&curve_at(tl, t_switch) == &tl.library[tl.segments[1].scene_index].curve);
    CHECK(&curve_at(tl, t_switch - 1e-9) == &tl.library[tl.segments[0].scene_index].curve);
  }

  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    double t = rng.uniform(0.0, 20.0 - 1e-9);
    int expected = tl.segments.back().scene_index;
    for (std::size_t k = 0; k + 1 < tl.segments.size(); ++k) {
      if (t >= tl.segments[k].start_s && t < tl.segments[k + 1].start_s) {
        expected = tl.segments[k].scene_index;
        break;
      }
    }
    CHECK(&curve_at(tl, t) == &tl.library[expected].curve);
  }

  CHECK_THROWS_AS(curve_at(tl, -0.1), std::domain_error);
  CHECK_THROWS_AS(curve_at(tl, 20.0), std::domain_error);
}

TEST_CASE("empty scene library is a configuration error") {
  SceneProcess p{{}, 3.5, 0};
  CHECK_THROWS_AS(sample_scene_timeline(p, 10.0), ConfigError);
}

TEST_CASE("scene library file round-trip") {
  const char* path = "test_scene_library.txt";
  {
    std::ofstream out(path);
    out << "# id complexity q_ref r_ref slope q_floor q_ceil\n";
    out << "sceneA complex 35 19 5 20 45\n";
    out << "sceneB simple 35 3 3 20 45  # trailing comment\n";
  }
  auto scenes = load_scene_library(path);
  REQUIRE(scenes.size() == 2);
  CHECK(scenes[0].scene_id == "sceneA");
  CHECK(scenes[0].curve.r_ref_mbps == 19.0);
  CHECK(scenes[1].complexity_label == "simple");
  std::remove(path);

  CHECK_THROWS_AS(load_scene_library("does_not_exist.txt"), ConfigError);
}

TEST_CASE("scene library file rejects duplicates and bad records") {
  const char* path = "test_scene_library_bad.txt";
  {
    std::ofstream out(path);
    out << "sceneA complex 35 19 5 20 45\n";
    out << "sceneA simple 35 3 3 20 45\n";
  }
  CHECK_THROWS_AS(load_scene_library(path), ConfigError);
  {
    std::ofstream out(path);
    out << "sceneA complex 35 19\n";
  }
  CHECK_THROWS_AS(load_scene_library(path), ConfigError);
  std::remove(path);
}

TEST_CASE("default library orders complexity by required bitrate") {
  auto lib = default_scene_library();
  REQUIRE(lib.size() == 4);
  std::vector<double> required;
  for (const auto& s : lib) {
    auto r = invert(s.curve, 35.0);
    REQUIRE(r.has_value());
    required.push_back(*r);
  }
  std::vector<double> expected{19.0, 13.0, 8.0, 3.0};
  for (std::size_t i = 0; i < required.size(); ++i) {
    CHECK(required[i] == doctest::Approx(expected[i]).epsilon(1e-9));
  }
}
