#include "uxsim/allocators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uxsim {

namespace {

constexpr double kQualityEps = 1e-9;

std::int64_t ceil_div_rate(double rate_mbps, double per_rbg_mbps) {
  // Small backoff keeps x/y that is integral up to FP noise from rounding up.
  return static_cast<std::int64_t>(std::ceil(rate_mbps / per_rbg_mbps - 1e-9));
}

bool rate_meets_target(const QBCurve& curve, double bitrate_mbps, double target_db,
                       const RateBounds& bounds) {
  if (bitrate_mbps < bounds.min_mbps) return false;
  double rate = std::min(bitrate_mbps, bounds.max_mbps);
  return evaluate(curve, rate, bounds) >= target_db - kQualityEps;
}

}  // namespace

void MaxMinConfig::validate() const {
  if (!(q_min_db < q_max_db)) throw ConfigError("maxmin: q_min must be < q_max");
  if (!(tolerance_db > 0.0)) throw ConfigError("maxmin: tolerance must be > 0");
}

double per_rbg_rate(const UESnapshot& ue, double t_win_ms, const LinkAbstractionConfig& link,
                    double link_efficiency) {
  if (!(t_win_ms > 0.0)) throw std::invalid_argument("per_rbg_rate: t_win must be > 0");
  double bits = static_cast<double>(bits_per_rbg(ue.se, link));
  return bits / (t_win_ms * 1000.0) * link_efficiency;  // bits per ms -> Mbps
}

std::optional<std::int64_t> min_rbgs(const UESnapshot& ue, double t_win_ms,
                                     const LinkAbstractionConfig& link, double link_efficiency,
                                     const RateBounds& bounds) {
  double rbg_rate = per_rbg_rate(ue, t_win_ms, link, link_efficiency);
  if (rbg_rate <= 0.0) return std::nullopt;
  auto needed = invert(ue.curve, ue.target_db, bounds);
  if (!needed) return std::nullopt;
  return ceil_div_rate(*needed, rbg_rate);
}

AllocationOutput maxcap_allocate(const AllocationInput& input, const MaxCapOptions& opts) {
  if (input.n_rbg < 0) throw std::invalid_argument("maxcap_allocate: negative RBG budget");
  const auto n_ues = static_cast<int>(input.ues.size());
  AllocationOutput out;
  out.per_ue.resize(input.ues.size());
  if (n_ues == 0) return out;

  std::vector<double> rbg_rate(input.ues.size());
  std::vector<std::optional<std::int64_t>> need(input.ues.size());
  bool all_feasible = true;
  std::int64_t total_need = 0;
  for (int i = 0; i < n_ues; ++i) {
    rbg_rate[i] = per_rbg_rate(input.ues[i], input.t_win_ms, input.link, input.link_efficiency);
    need[i] = min_rbgs(input.ues[i], input.t_win_ms, input.link, input.link_efficiency,
                       input.rate_bounds);
    if (need[i]) {
      total_need += *need[i];
    } else {
      all_feasible = false;
    }
  }

  const std::int64_t budget = input.n_rbg;
  std::vector<std::int64_t> rbgs(input.ues.size(), 0);

  if (all_feasible && total_need <= budget) {
    // Everyone fits: minimum demand plus an equal share of the surplus.
    std::int64_t surplus = budget - total_need;
    std::int64_t share = surplus / n_ues;
    for (int i = 0; i < n_ues; ++i) rbgs[i] = *need[i] + share;
    if (opts.round_robin_remainder) {
      std::int64_t remainder = surplus - share * n_ues;
      std::vector<int> order(input.ues.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return input.ues[a].ue_id < input.ues[b].ue_id; });
      for (std::int64_t k = 0; k < remainder; ++k) ++rbgs[order[static_cast<std::size_t>(k)]];
    }
  } else {
    // Admit the cheapest UEs first; unreachable targets sort last.
    std::vector<int> order(input.ues.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      std::int64_t ga = need[a] ? *need[a] : std::numeric_limits<std::int64_t>::max();
      std::int64_t gb = need[b] ? *need[b] : std::numeric_limits<std::int64_t>::max();
      if (ga != gb) return ga < gb;
      return input.ues[a].ue_id < input.ues[b].ue_id;
    });

    std::int64_t used = 0;
    int admitted = 0;
    for (int idx : order) {
      if (!need[idx]) break;
      std::int64_t g = *need[idx];
      bool fits = opts.strict_budget ? (used + g < budget) : (used + g <= budget);
      if (!fits) break;
      rbgs[idx] = g;
      used += g;
      ++admitted;
    }

    int residual_ues = n_ues - admitted;
    if (residual_ues > 0) {
      std::int64_t share = (budget - used) / residual_ues;
      std::int64_t remainder = (budget - used) - share * residual_ues;
      for (int k = admitted; k < n_ues; ++k) rbgs[order[static_cast<std::size_t>(k)]] = share;
      if (opts.round_robin_remainder) {
        std::vector<int> rest(order.begin() + admitted, order.end());
        std::sort(rest.begin(), rest.end(),
                  [&](int a, int b) { return input.ues[a].ue_id < input.ues[b].ue_id; });
        for (std::int64_t k = 0; k < remainder; ++k) ++rbgs[rest[static_cast<std::size_t>(k)]];
      }
    }
  }

  for (int i = 0; i < n_ues; ++i) {
    auto& ue = out.per_ue[i];
    ue.ue_id = input.ues[i].ue_id;
    ue.allocated_rbgs = rbgs[i];
    double rate = static_cast<double>(rbgs[i]) * rbg_rate[i];
    ue.bitrate_mbps = std::min(rate, input.rate_bounds.max_mbps);
    ue.satisfied = rate_meets_target(input.ues[i].curve, ue.bitrate_mbps,
                                     input.ues[i].target_db, input.rate_bounds);
    out.total_rbgs_used += rbgs[i];
  }
  return out;
}

BisectResult bisect_common_level(
    const std::function<std::int64_t(int, double)>& rbgs_needed, int n_ues, std::int64_t budget,
    const MaxMinConfig& cfg) {
  cfg.validate();

  auto total_at = [&](double level) {
    std::int64_t sum = 0;
    for (int i = 0; i < n_ues; ++i) sum += rbgs_needed(i, level);
    return sum;
  };

  BisectResult res;
  if (total_at(cfg.q_min_db) > budget) {
    res.level_db = cfg.q_min_db;
    return res;  // not even the lowest level fits
  }

  double lo = cfg.q_min_db;
  double hi = cfg.q_max_db;
  res.feasible = true;
  while (hi - lo > cfg.tolerance_db) {
    ++res.iterations;
    double mid = 0.5 * (hi + lo);
    // An exact fit still counts as feasible: integer demands plateau, so a
    // higher level may fit the same budget. Stopping here can give away more
    // than the convergence tolerance.
    if (total_at(mid) > budget) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // The last midpoint may be infeasible; allocate at the highest level proven
  // feasible.
  res.level_db = lo;
  res.rbgs.resize(static_cast<std::size_t>(n_ues));
  for (int i = 0; i < n_ues; ++i) res.rbgs[static_cast<std::size_t>(i)] = rbgs_needed(i, lo);
  return res;
}

AllocationOutput maxmin_allocate(const AllocationInput& input, const MaxMinConfig& cfg) {
  if (input.n_rbg < 0) throw std::invalid_argument("maxmin_allocate: negative RBG budget");
  const auto n_ues = static_cast<int>(input.ues.size());
  AllocationOutput out;
  out.per_ue.resize(input.ues.size());
  if (n_ues == 0) {
    out.maxmin = MaxMinInfo{cfg.q_min_db, 0, false};
    return out;
  }

  std::vector<double> rbg_rate(input.ues.size());
  for (int i = 0; i < n_ues; ++i) {
    rbg_rate[i] = per_rbg_rate(input.ues[i], input.t_win_ms, input.link, input.link_efficiency);
  }

  // Demand at a common quality level. UEs that cannot reach the level at the
  // maximum allowed rate demand the maximum-rate allocation instead; UEs with
  // no capacity at all are left out of the contention.
  auto demand = [&](int i, double level) -> std::int64_t {
    if (rbg_rate[i] <= 0.0) return 0;
    auto rate = invert(input.ues[i].curve, level, input.rate_bounds);
    double r = rate ? *rate : input.rate_bounds.max_mbps;
    return ceil_div_rate(r, rbg_rate[i]);
  };

  BisectResult res = bisect_common_level(demand, n_ues, input.n_rbg, cfg);

  std::vector<std::int64_t> rbgs(input.ues.size(), 0);
  if (res.feasible) {
    rbgs = res.rbgs;
  } else {
    // No common level fits. Hand out minimum-rate allocations in ascending
    // order of need until the budget runs dry.
    std::vector<std::int64_t> floor_need(input.ues.size(), 0);
    for (int i = 0; i < n_ues; ++i) {
      floor_need[i] = rbg_rate[i] > 0.0 ? ceil_div_rate(input.rate_bounds.min_mbps, rbg_rate[i]) : 0;
    }
    std::vector<int> order(input.ues.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (floor_need[a] != floor_need[b]) return floor_need[a] < floor_need[b];
      return input.ues[a].ue_id < input.ues[b].ue_id;
    });
    std::int64_t used = 0;
    for (int idx : order) {
      if (floor_need[idx] == 0) continue;
      if (used + floor_need[idx] > input.n_rbg) break;
      rbgs[idx] = floor_need[idx];
      used += floor_need[idx];
    }
  }

  for (int i = 0; i < n_ues; ++i) {
    auto& ue = out.per_ue[i];
    ue.ue_id = input.ues[i].ue_id;
    ue.allocated_rbgs = rbgs[i];
    double rate = static_cast<double>(rbgs[i]) * rbg_rate[i];
    ue.bitrate_mbps = std::min(rate, input.rate_bounds.max_mbps);
    ue.satisfied = rate_meets_target(input.ues[i].curve, ue.bitrate_mbps,
                                     input.ues[i].target_db, input.rate_bounds);
    out.total_rbgs_used += rbgs[i];
  }
  out.maxmin = MaxMinInfo{res.level_db, res.iterations, !res.feasible};
  return out;
}

}  // namespace uxsim
