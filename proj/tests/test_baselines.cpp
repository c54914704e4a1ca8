#include <doctest.h>

#include <cmath>

#include "uxsim/baselines.hpp"

using namespace uxsim;

TEST_CASE("rtt controller multiplicative factors and dead band") {
  RttControllerState s;
  s.rate_mbps = 10.0;
  CHECK(rtt_update(s, 7.0) == doctest::Approx(11.0).epsilon(1e-12));  // below beta_low
  CHECK(rtt_update(s, 9.0) == doctest::Approx(10.0).epsilon(1e-12));  // dead band
  CHECK(rtt_update(s, 11.0) == doctest::Approx(9.0).epsilon(1e-12));  // above beta_high

  s.rate_mbps = 50.0;
  CHECK(rtt_update(s, 2.0) == doctest::Approx(50.0));  // cap binds
  s.rate_mbps = 1.0;
  CHECK(rtt_update(s, 99.0) == doctest::Approx(1.0));  // floor binds
}

TEST_CASE("rtt controller thresholds are exclusive at the boundary") {
  RttControllerState s;
  s.rate_mbps = 10.0;
  CHECK(rtt_update(s, 8.0) == doctest::Approx(10.0));   // == beta_low holds
  CHECK(rtt_update(s, 10.0) == doctest::Approx(10.0));  // == beta_high holds
}

TEST_CASE("rtt rate stays within bounds for arbitrary rtt sequences") {
  RttControllerState s;
  s.rate_mbps = 25.0;
  Rng rng(42);
  for (int i = 0; i < 10000; ++i) {
    s.rate_mbps = rtt_update(s, rng.uniform(0.0, 40.0));
    CHECK(s.rate_mbps >= 1.0);
    CHECK(s.rate_mbps <= 50.0);
  }
}

TEST_CASE("rtt state validation") {
  RttControllerState s;
  s.beta_low_ms = 10.0;
  s.beta_high_ms = 8.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = RttControllerState{};
  s.alpha_down = 1.2;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("marking probability endpoints and midpoint") {
  L4SMarkerConfig cfg;  // 4 ms / 17 ms
  CHECK(marking_probability(4.0, cfg) == 0.0);
  CHECK(marking_probability(17.0, cfg) == 1.0);
  CHECK(marking_probability(10.5, cfg) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(marking_probability(0.0, cfg) == 0.0);
  CHECK(marking_probability(100.0, cfg) == 1.0);
}

TEST_CASE("marking probability is continuous and non-decreasing") {
  L4SMarkerConfig cfg;
  double prev = -1.0;
  for (double d = 0.0; d <= 25.0; d += 0.01) {
    double p = marking_probability(d, cfg);
    CHECK(p >= prev);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    if (prev >= 0.0) CHECK(std::abs(p - marking_probability(d - 0.01, cfg)) < 0.002);
    prev = p;
  }
}

TEST_CASE("mark_packet extremes and empirical midpoint rate") {
  L4SMarkerConfig cfg;
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(!mark_packet(rng, 0.0, cfg));
    CHECK(mark_packet(rng, 17.0, cfg));
  }
  int marked = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) marked += mark_packet(rng, 10.5, cfg) ? 1 : 0;
  double rate = static_cast<double>(marked) / n;
  CHECK(rate == doctest::Approx(0.5).epsilon(0.02));  // 0.5 +/- 0.01
}

TEST_CASE("prague halves on loss") {
  PragueState s;
  s.rate_mbps = 20.0;
  s.last_update_time_ms = 0.0;
  PragueState next = prague_on_feedback(s, 10, 0, 3, 100.0, 20.0);
  CHECK(next.rate_mbps == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(next.last_md_time_ms == 100.0);
}

TEST_CASE("prague multiplicative decrease scales with the mark fraction") {
  PragueState s;
  s.rate_mbps = 20.0;
  s.m_ecn = 1.0;
  s.ewma_gain = 0.0;  // hold m_ecn fixed for the check
  PragueState next = prague_on_feedback(s, 10, 10, 0, 100.0, 20.0);
  // m_ecn = 1: the decrease factor coincides with loss halving.
  CHECK(next.rate_mbps == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("prague additive increase of one step per RTT") {
  PragueState s;
  s.rate_mbps = 10.0;
  s.additive_step_mbps = 0.5;
  s.last_update_time_ms = 100.0;
  // One RTT after the previous update, no marks, no losses.
  PragueState next = prague_on_feedback(s, 20, 0, 0, 120.0, 20.0);
  CHECK(next.rate_mbps == doctest::Approx(10.5).epsilon(1e-12));
}

TEST_CASE("prague decreases at most once per RTT") {
  PragueState s;
  s.rate_mbps = 40.0;
  s.m_ecn = 0.5;
  PragueState a = prague_on_feedback(s, 10, 10, 0, 100.0, 20.0);
  double after_first = a.rate_mbps;
  CHECK(after_first < 40.0);
  // 5 ms later: another marked batch, but the decrease is not yet due.
  PragueState b = prague_on_feedback(a, 10, 10, 0, 105.0, 20.0);
  CHECK(b.rate_mbps >= after_first);
  // A full RTT later the decrease applies again.
  PragueState c = prague_on_feedback(b, 10, 10, 0, 125.0, 20.0);
  CHECK(c.rate_mbps < b.rate_mbps);
}

TEST_CASE("prague reaches the rate cap under clean feedback") {
  PragueState s;
  s.rate_mbps = 1.0;
  s.last_update_time_ms = 0.0;
  double t = 0.0;
  int rounds = 0;
  while (s.rate_mbps < 50.0 && rounds < 20000) {
    t += 20.0;
    s = prague_on_feedback(s, 10, 0, 0, t, 20.0);
    ++rounds;
  }
  CHECK(s.rate_mbps == doctest::Approx(50.0));
  CHECK(rounds < 200);  // 49 Mbps at 0.5 Mbps per RTT
}

TEST_CASE("prague m_ecn tracks the marked fraction by EWMA") {
  PragueState s;
  s.m_ecn = 0.0;
  s.ewma_gain = 1.0 / 16.0;
  PragueState next = prague_on_feedback(s, 16, 8, 0, 10.0, 20.0);
  CHECK(next.m_ecn == doctest::Approx(0.5 / 16.0).epsilon(1e-12));
  // Converges toward the steady fraction.
  for (int i = 0; i < 200; ++i) next = prague_on_feedback(next, 16, 8, 0, 10.0 + i, 2000.0);
  CHECK(next.m_ecn == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("prague rate stays within bounds") {
  PragueState s;
  s.rate_mbps = 30.0;
  Rng rng(11);
  double t = 0.0;
  for (int i = 0; i < 5000; ++i) {
    t += rng.uniform(1.0, 30.0);
    auto acked = static_cast<std::int64_t>(1 + rng.uniform_int(20));
    auto marked = static_cast<std::int64_t>(rng.uniform_int(static_cast<std::uint64_t>(acked) + 1));
    auto lost = static_cast<std::int64_t>(rng.uniform_int(3));
    s = prague_on_feedback(s, acked, marked, lost, t, rng.uniform(5.0, 50.0));
    CHECK(s.rate_mbps >= 1.0);
    CHECK(s.rate_mbps <= 50.0);
  }
}
