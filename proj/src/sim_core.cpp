#include "uxsim/sim_core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>

namespace uxsim {

const char* algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::MaxCap: return "maxcap";
    case Algorithm::MaxMin: return "maxmin";
    case Algorithm::Rtt: return "rtt";
    case Algorithm::Prague: return "prague";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "maxcap") return Algorithm::MaxCap;
  if (name == "maxmin") return Algorithm::MaxMin;
  if (name == "rtt") return Algorithm::Rtt;
  if (name == "prague") return Algorithm::Prague;
  return std::nullopt;
}

const char* ctrl_trigger_name(CtrlTrigger t) {
  switch (t) {
    case CtrlTrigger::RttReport: return "rtt_report";
    case CtrlTrigger::Marks: return "marks";
    case CtrlTrigger::Loss: return "loss";
    case CtrlTrigger::Allocation: return "allocation";
  }
  return "?";
}

void SimConfig::validate() const {
  if (n_ues < 0) throw ConfigError("sim: n_ues must be >= 0");
  if (!(duration_s > 0.0)) throw ConfigError("sim: duration must be > 0");
  if (fps <= 0) throw ConfigError("sim: fps must be > 0");
  if (backhaul_delay_ms < 0 || encode_delay_ms < 0 || decode_delay_ms < 0 ||
      feedback_uplink_wait_ms < 0 || playout_offset_ms < 0) {
    throw ConfigError("sim: delays must be >= 0");
  }
  if (harq_delay_slots < 1) throw ConfigError("sim: harq_delay_slots must be >= 1");
  slot.validate();
  link.validate();
  ux.maxmin.validate();
  rtt.validate();
  l4s.validate();
  if (!(ux.t_win_ms > 0.0) || !(ux.t_period_ms > 0.0)) {
    throw ConfigError("ux controller: t_win and t_period must be > 0");
  }
  if (slot.pattern.find('D') == std::string::npos && slot.s_slot_dl_fraction <= 0.0) {
    throw ConfigError("slot pattern has no DL capacity (no D slots)");
  }
  if (rbg_budget(ux.t_win_ms, slot) < 1) {
    throw ConfigError("ux controller: zero DL slots in the allocation window");
  }
}

int pf_pick(std::span<const PfCandidate> candidates) {
  int best = -1;
  double best_metric = -1.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!c.backlogged) continue;
    double metric = c.inst_rate_mbps / std::max(c.ewma_mbps, 1e-9);
    if (metric > best_metric ||
        (metric == best_metric && best >= 0 && c.ue_id < candidates[static_cast<std::size_t>(best)].ue_id)) {
      best = static_cast<int>(i);
      best_metric = metric;
    }
  }
  return best;
}

double pf_ewma_update(double ewma_mbps, double served_mbps, double gain) {
  return (1.0 - gain) * ewma_mbps + gain * served_mbps;
}

namespace {

enum class EvType : std::uint8_t {
  SlotBoundary,
  FrameGen,
  FrameEnqueue,
  ReportTick,
  RateArrival,
  RttReportArrival,
  PragueAckArrival,
  AllocationTick,
};

// Tie-break classes: slot boundaries before frame pipeline events before
// feedback deliveries before allocation, then insertion order.
int event_class(EvType t) {
  switch (t) {
    case EvType::SlotBoundary: return 0;
    case EvType::FrameGen:
    case EvType::FrameEnqueue: return 1;
    case EvType::ReportTick:
    case EvType::RateArrival:
    case EvType::RttReportArrival:
    case EvType::PragueAckArrival: return 2;
    case EvType::AllocationTick: return 3;
  }
  return 4;
}

struct Event {
  TimeUs t = 0;
  int cls = 0;
  std::uint64_t seq = 0;
  EvType type = EvType::SlotBoundary;
  int flow = -1;
  int frame_idx = -1;
  double f0 = 0.0;
  std::int64_t i0 = 0, i1 = 0, i2 = 0;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.t != b.t) return a.t > b.t;
    if (a.cls != b.cls) return a.cls > b.cls;
    return a.seq > b.seq;
  }
};

struct QueuedChunk {
  int frame_idx;
  std::int64_t new_bits;
};

struct Retx {
  TimeUs ready;
  std::int64_t bits;
  int frame_idx;
  bool marked;
};

struct Flow {
  int ue_id = 0;
  const UeSetup* setup = nullptr;
  double encoder_rate = 1.0;
  double ewma_mbps = 0.0;
  std::deque<QueuedChunk> queue;
  std::deque<Retx> retx;
  std::vector<FrameRecord> frames;
  std::deque<std::pair<TimeUs, double>> rtt_samples;  // (measured at, rtt ms)
  TimeUs frame_phase = 0;
  int next_decode_idx = 0;  // frames decode in index order
  TimeUs last_decode_us = 0;
  std::int64_t acked_pending = 0;
  std::int64_t marked_pending = 0;
  std::int64_t lost_pending = 0;
  RttControllerState rtt_state;
  PragueState prague_state;
  Rng harq_rng, mark_rng, jitter_rng;
  int next_frame = 0;
  FlowAccounting acct;
};

class Engine {
 public:
  Engine(const SimConfig& cfg, Algorithm algo, const std::vector<UeSetup>& setups)
      : cfg_(cfg), algo_(algo) {
    cfg_.validate();
    if (static_cast<int>(setups.size()) != cfg_.n_ues) {
      throw ConfigError("sim: expected one UeSetup per UE");
    }
    end_us_ = us_from_s(cfg_.duration_s);
    slot_us_ = cfg_.slot.slot_us();
    frame_interval_check();

    for (int i = 0; i < cfg_.n_ues; ++i) {
      setups[static_cast<std::size_t>(i)].trace.validate();
      if (setups[static_cast<std::size_t>(i)].scenes.horizon_s + 1e-9 < cfg_.duration_s) {
        throw ConfigError("sim: scene timeline shorter than the run duration");
      }
    }

    flows_.resize(static_cast<std::size_t>(cfg_.n_ues));
    for (int i = 0; i < cfg_.n_ues; ++i) {
      auto& f = flows_[static_cast<std::size_t>(i)];
      f.ue_id = i;
      f.setup = &setups[static_cast<std::size_t>(i)];
      f.harq_rng = Rng(derive_seed(cfg_.seed, 31, static_cast<std::uint64_t>(i)));
      f.mark_rng = Rng(derive_seed(cfg_.seed, 32, static_cast<std::uint64_t>(i)));
      f.jitter_rng = Rng(derive_seed(cfg_.seed, 33, static_cast<std::uint64_t>(i)));
      f.rtt_state = cfg_.rtt;
      f.rtt_state.bounds = cfg_.rate_bounds;
      f.prague_state = cfg_.prague;
      f.prague_state.bounds = cfg_.rate_bounds;

      switch (algo_) {
        case Algorithm::Rtt: {
          Rng init(derive_seed(cfg_.seed, 101, static_cast<std::uint64_t>(i)));
          f.rtt_state.rate_mbps = init.uniform(cfg_.rate_bounds.min_mbps, cfg_.rate_bounds.max_mbps);
          f.encoder_rate = f.rtt_state.rate_mbps;
          break;
        }
        case Algorithm::Prague: {
          Rng init(derive_seed(cfg_.seed, 102, static_cast<std::uint64_t>(i)));
          f.prague_state.rate_mbps =
              init.uniform(cfg_.rate_bounds.min_mbps, cfg_.rate_bounds.max_mbps);
          f.encoder_rate = f.prague_state.rate_mbps;
          break;
        }
        default:
          // UX-controlled flows start at the floor until the first allocation.
          f.encoder_rate = cfg_.rate_bounds.min_mbps;
          break;
      }
    }

    n_rbg_window_ = rbg_budget(cfg_.ux.t_win_ms, cfg_.slot);
    link_eff_ = cfg_.ux.link_efficiency(cfg_.link);

    push(Event{0, 0, 0, EvType::SlotBoundary});
    for (int i = 0; i < cfg_.n_ues; ++i) {
      auto& f = flows_[static_cast<std::size_t>(i)];
      if (cfg_.randomize_frame_phase) {
        Rng phase_rng(derive_seed(cfg_.seed, 34, static_cast<std::uint64_t>(i)));
        f.frame_phase = static_cast<TimeUs>(phase_rng.uniform_int(
            static_cast<std::uint64_t>(1000000LL / cfg_.fps)));
      }
      push(Event{f.frame_phase, 0, 0, EvType::FrameGen, i, 0});
    }
    if (algo_ == Algorithm::MaxCap || algo_ == Algorithm::MaxMin) {
      push(Event{0, 0, 0, EvType::AllocationTick});
    }
    if (algo_ == Algorithm::Rtt) {
      TimeUs tick = us_from_ms(cfg_.rtt.report_period_ms);
      for (int i = 0; i < cfg_.n_ues; ++i) push(Event{tick, 0, 0, EvType::ReportTick, i});
    }
  }

  SimResult run_all() {
    while (!events_.empty()) {
      Event ev = events_.top();
      if (ev.t >= end_us_) break;
      events_.pop();
      now_ = ev.t;
      dispatch(ev);
    }
    return finish();
  }

 private:
  void frame_interval_check() const {
    if (1000000LL / cfg_.fps < 1) throw ConfigError("sim: fps too high for the clock resolution");
  }

  void push(Event ev) {
    ev.cls = event_class(ev.type);
    ev.seq = seq_++;
    events_.push(ev);
  }

  void dispatch(const Event& ev) {
    switch (ev.type) {
      case EvType::SlotBoundary: on_slot(); break;
      case EvType::FrameGen: on_frame_gen(ev.flow, ev.frame_idx); break;
      case EvType::FrameEnqueue: on_frame_enqueue(ev.flow, ev.frame_idx); break;
      case EvType::ReportTick: on_report_tick(ev.flow); break;
      case EvType::RateArrival: on_rate_arrival(ev.flow, ev.f0); break;
      case EvType::RttReportArrival: on_rtt_report(ev.flow, ev.f0); break;
      case EvType::PragueAckArrival: on_prague_ack(ev.flow, ev.i0, ev.i1, ev.i2, ev.f0); break;
      case EvType::AllocationTick: on_allocation_tick(); break;
    }
  }

  // --- frame pipeline ---------------------------------------------------

  void on_frame_gen(int flow_idx, int frame_idx) {
    auto& f = flows_[static_cast<std::size_t>(flow_idx)];
    double rate = f.encoder_rate;
    std::int64_t size = frame_size_bits(rate, cfg_.fps);
    if (cfg_.frame_jitter_frac > 0.0) {
      double factor = 1.0 + f.jitter_rng.gaussian(0.0, cfg_.frame_jitter_frac);
      factor = std::clamp(factor, 0.5, 1.5);
      size = std::llround(static_cast<double>(size) * factor);
    }

    FrameRecord rec;
    rec.ue_id = f.ue_id;
    rec.frame_index = frame_idx;
    rec.size_bits = size;
    rec.gen_us = now_;
    rec.encoding_rate_mbps = rate;
    rec.quality_db = evaluate(curve_at(f.setup->scenes, s_from_us(now_)), rate, cfg_.rate_bounds);
    rec.bits_remaining = size;
    f.frames.push_back(rec);
    f.acct.bits_generated += size;
    f.acct.bits_in_pipe += size;

    Event enq{now_ + us_from_ms(cfg_.encode_delay_ms + cfg_.backhaul_delay_ms), 0, 0,
              EvType::FrameEnqueue, flow_idx, frame_idx};
    push(enq);

    int next = frame_idx + 1;
    TimeUs next_t = f.frame_phase + static_cast<TimeUs>(next) * 1000000LL / cfg_.fps;
    if (next_t < end_us_) push(Event{next_t, 0, 0, EvType::FrameGen, flow_idx, next});
  }

  void on_frame_enqueue(int flow_idx, int frame_idx) {
    auto& f = flows_[static_cast<std::size_t>(flow_idx)];
    auto& rec = f.frames[static_cast<std::size_t>(frame_idx)];
    rec.enqueue_us = now_;
    f.queue.push_back({frame_idx, rec.size_bits});
    f.acct.bits_in_pipe -= rec.size_bits;
    f.acct.bits_in_queue += rec.size_bits;
  }

  // --- downlink scheduling ----------------------------------------------

  char slot_type(TimeUs t) const {
    auto slot_idx = static_cast<std::size_t>(t / slot_us_);
    return cfg_.slot.pattern[slot_idx % cfg_.slot.pattern.size()];
  }

  void on_slot() {
    check_bit_conservation();
    if (slot_type(now_) == 'D') serve_dl_slot();
    TimeUs next = now_ + slot_us_;
    if (next < end_us_) push(Event{next, 0, 0, EvType::SlotBoundary});
  }

  bool transmittable(const Flow& f, std::int64_t tb_bits) const {
    if (!f.retx.empty() && f.retx.front().ready <= now_) return true;
    return tb_bits > 0 && !f.queue.empty();
  }

  void serve_dl_slot() {
    const double slot_ms = cfg_.slot.slot_ms();
    const double now_ms = ms_from_us(now_);
    const auto n = flows_.size();

    std::vector<std::int64_t> tb_bits(n);
    std::vector<double> inst_rate(n);
    std::vector<std::int64_t> served_bits(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      double se = sinr_to_se(flows_[i].setup->trace.at_ms(now_ms), cfg_.link);
      tb_bits[i] = bits_per_rbg(se, cfg_.link);
      inst_rate[i] = static_cast<double>(tb_bits[i]) / (slot_ms * 1000.0);
    }

    int assigned = 0;
    for (int rbg = 0; rbg < cfg_.slot.rbgs_per_slot; ++rbg) {
      std::vector<PfCandidate> cands(n);
      for (std::size_t i = 0; i < n; ++i) {
        cands[i] = {flows_[i].ue_id, inst_rate[i], flows_[i].ewma_mbps,
                    transmittable(flows_[i], tb_bits[i])};
      }
      int pick = pf_pick(cands);
      if (pick < 0) break;
      served_bits[static_cast<std::size_t>(pick)] +=
          serve_rbg(static_cast<std::size_t>(pick), tb_bits[static_cast<std::size_t>(pick)]);
      ++assigned;
    }

    if (assigned < cfg_.slot.rbgs_per_slot) {
      for (std::size_t i = 0; i < n; ++i) {
        if (transmittable(flows_[i], tb_bits[i])) {
          result_.work_conservation_violations += cfg_.slot.rbgs_per_slot - assigned;
          break;
        }
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      double served_mbps = static_cast<double>(served_bits[i]) / (slot_ms * 1000.0);
      flows_[i].ewma_mbps = pf_ewma_update(flows_[i].ewma_mbps, served_mbps);
    }
  }

  // Serves one RBG for the flow; returns the bits scheduled on it.
  std::int64_t serve_rbg(std::size_t flow_idx, std::int64_t tb_cap) {
    auto& f = flows_[flow_idx];
    ++result_.tb_attempts;
    bool fail = f.harq_rng.bernoulli(cfg_.link.target_bler);

    // Pending retransmissions preempt new data.
    if (!f.retx.empty() && f.retx.front().ready <= now_) {
      Retx r = f.retx.front();
      f.retx.pop_front();
      if (fail) {
        ++result_.tb_failures;
        r.ready = now_ + static_cast<TimeUs>(cfg_.harq_delay_slots) * slot_us_;
        f.retx.push_back(r);
      } else {
        f.acct.bits_in_harq -= r.bits;
        deliver_bits(f, r.frame_idx, r.bits, r.marked);
      }
      return r.bits;
    }

    auto& head = f.queue.front();
    std::int64_t tb = std::min(tb_cap, head.new_bits);
    int frame_idx = head.frame_idx;
    double sojourn_ms = ms_from_us(now_ - f.frames[static_cast<std::size_t>(frame_idx)].enqueue_us);
    bool marked = algo_ == Algorithm::Prague && mark_packet(f.mark_rng, sojourn_ms, cfg_.l4s);

    head.new_bits -= tb;
    f.acct.bits_in_queue -= tb;
    if (head.new_bits == 0) f.queue.pop_front();

    if (fail) {
      ++result_.tb_failures;
      f.retx.push_back(
          {now_ + static_cast<TimeUs>(cfg_.harq_delay_slots) * slot_us_, tb, frame_idx, marked});
      f.acct.bits_in_harq += tb;
    } else {
      deliver_bits(f, frame_idx, tb, marked);
    }
    return tb;
  }

  void deliver_bits(Flow& f, int frame_idx, std::int64_t bits, bool marked) {
    f.acct.bits_delivered += bits;
    auto& rec = f.frames[static_cast<std::size_t>(frame_idx)];
    bool head_packet = rec.bits_remaining == rec.size_bits;
    rec.bits_remaining -= bits;
    if (algo_ == Algorithm::Prague) {
      ++f.acked_pending;
      if (marked) ++f.marked_pending;
    }
    if (algo_ == Algorithm::Rtt && head_packet) {
      // Packet RTT is sampled on the first delivered packet of each frame:
      // later packets of the burst measure the frame's own serialization, not
      // network congestion.
      TimeUs acked_at = now_ + slot_us_;
      double rtt_ms = ms_from_us(acked_at - rec.gen_us) + cfg_.feedback_return_delay_ms();
      f.rtt_samples.emplace_back(acked_at, rtt_ms);
    }
    if (rec.bits_remaining > 0) return;

    rec.delivered_us = now_ + slot_us_;  // air time: end of the serving slot

    // Frames reference their predecessors: a frame delivered ahead of an
    // earlier one (HARQ reordering) waits for it before decoding.
    while (f.next_decode_idx < static_cast<int>(f.frames.size())) {
      auto& ready = f.frames[static_cast<std::size_t>(f.next_decode_idx)];
      if (!ready.delivered()) break;
      ready.decoded_us = std::max(ready.delivered_us + us_from_ms(cfg_.decode_delay_ms),
                                  f.last_decode_us);
      f.last_decode_us = ready.decoded_us;
      ++f.next_decode_idx;
      on_frame_decoded(f, ready);
    }
  }

  void on_frame_decoded(Flow& f, const FrameRecord& rec) {
    double rtt_ms = ms_from_us(rec.decoded_us - rec.gen_us) + cfg_.feedback_return_delay_ms();
    if (algo_ == Algorithm::Prague) {
      Event ack{rec.decoded_us + us_from_ms(cfg_.feedback_return_delay_ms()), 0, 0,
                EvType::PragueAckArrival, f.ue_id};
      ack.i0 = f.acked_pending;
      ack.i1 = f.marked_pending;
      ack.i2 = f.lost_pending;
      ack.f0 = rtt_ms;
      push(ack);
      f.acked_pending = f.marked_pending = f.lost_pending = 0;
    }
  }

  // --- controllers --------------------------------------------------------

  void on_report_tick(int flow_idx) {
    auto& f = flows_[static_cast<std::size_t>(flow_idx)];
    TimeUs window = us_from_ms(f.rtt_state.window_ms);
    while (!f.rtt_samples.empty() && f.rtt_samples.front().first <= now_ - window) {
      f.rtt_samples.pop_front();
    }
    double sum = 0.0;
    int count = 0;
    for (const auto& [ts, rtt] : f.rtt_samples) {
      if (ts <= now_) {
        sum += rtt;
        ++count;
      }
    }
    if (count > 0) {
      Event rep{now_ + us_from_ms(cfg_.feedback_return_delay_ms()), 0, 0, EvType::RttReportArrival,
                flow_idx};
      rep.f0 = sum / count;
      push(rep);
    }
    TimeUs next = now_ + us_from_ms(f.rtt_state.report_period_ms);
    if (next < end_us_) push(Event{next, 0, 0, EvType::ReportTick, flow_idx});
  }

  void on_rtt_report(int flow_idx, double avg_rtt_ms) {
    auto& f = flows_[static_cast<std::size_t>(flow_idx)];
    f.rtt_state.rate_mbps = rtt_update(f.rtt_state, avg_rtt_ms);
    f.encoder_rate = f.rtt_state.rate_mbps;
    log_ctrl(flow_idx, CtrlTrigger::RttReport, avg_rtt_ms, f.encoder_rate);
  }

  void on_prague_ack(int flow_idx, std::int64_t acked, std::int64_t marked, std::int64_t lost,
                     double rtt_ms) {
    auto& f = flows_[static_cast<std::size_t>(flow_idx)];
    f.prague_state =
        prague_on_feedback(f.prague_state, acked, marked, lost, ms_from_us(now_), rtt_ms);
    f.encoder_rate = f.prague_state.rate_mbps;
    if (lost > 0) {
      log_ctrl(flow_idx, CtrlTrigger::Loss, static_cast<double>(lost), f.encoder_rate);
    } else {
      double frac = acked > 0 ? static_cast<double>(marked) / static_cast<double>(acked) : 0.0;
      log_ctrl(flow_idx, CtrlTrigger::Marks, frac, f.encoder_rate);
    }
  }

  void on_rate_arrival(int flow_idx, double rate_mbps) {
    auto& f = flows_[static_cast<std::size_t>(flow_idx)];
    f.encoder_rate = clamp_rate(rate_mbps, cfg_.rate_bounds);
    log_ctrl(flow_idx, CtrlTrigger::Allocation, rate_mbps, f.encoder_rate);
  }

  void on_allocation_tick() {
    AllocationInput input;
    input.t_win_ms = cfg_.ux.t_win_ms;
    input.n_rbg = n_rbg_window_;
    input.rate_bounds = cfg_.rate_bounds;
    input.link = cfg_.link;
    input.link_efficiency = link_eff_;
    const double now_ms = ms_from_us(now_);
    const double now_s = s_from_us(now_);
    for (const auto& f : flows_) {
      UESnapshot ue;
      ue.ue_id = f.ue_id;
      ue.se = sinr_to_se(f.setup->trace.at_ms(now_ms), cfg_.link);
      ue.curve = curve_at(f.setup->scenes, now_s);
      ue.target_db = cfg_.ux.target_db;
      input.ues.push_back(ue);
    }

    AllocationOutput out = algo_ == Algorithm::MaxCap
                               ? maxcap_allocate(input, cfg_.ux.maxcap)
                               : maxmin_allocate(input, cfg_.ux.maxmin);
    if (out.total_rbgs_used > input.n_rbg) ++result_.rbg_budget_violations;

    for (std::size_t i = 0; i < flows_.size(); ++i) {
      const auto& alloc = out.per_ue[i];
      if (cfg_.collect_allocation_events) {
        auto g = min_rbgs(input.ues[i], input.t_win_ms, input.link, input.link_efficiency,
                          input.rate_bounds);
        result_.alloc_events.push_back({now_, alloc.ue_id, input.ues[i].se, g ? *g : -1,
                                        alloc.allocated_rbgs, alloc.bitrate_mbps, alloc.satisfied});
      }
      Event rate{now_ + us_from_ms(cfg_.ux.signaling_delay_ms), 0, 0, EvType::RateArrival,
                 static_cast<int>(i)};
      rate.f0 = alloc.bitrate_mbps;
      push(rate);
    }

    TimeUs next = now_ + us_from_ms(cfg_.ux.t_period_ms);
    if (next < end_us_) push(Event{next, 0, 0, EvType::AllocationTick});
  }

  // --- bookkeeping --------------------------------------------------------

  void log_ctrl(int flow_idx, CtrlTrigger trigger, double value, double new_rate) {
    if (!cfg_.collect_controller_events) return;
    result_.ctrl_events.push_back(
        {now_, flows_[static_cast<std::size_t>(flow_idx)].ue_id, trigger, value, new_rate});
  }

  void check_bit_conservation() {
    for (const auto& f : flows_) {
      std::int64_t rhs =
          f.acct.bits_in_pipe + f.acct.bits_in_queue + f.acct.bits_in_harq + f.acct.bits_delivered;
      if (f.acct.bits_generated != rhs) ++result_.bit_conservation_violations;
    }
  }

  SimResult finish() {
    check_bit_conservation();
    result_.duration_s = cfg_.duration_s;
    result_.fps = cfg_.fps;
    result_.playout_offset_ms = cfg_.playout_offset_ms;
    result_.frames_per_ue.reserve(flows_.size());
    for (auto& f : flows_) {
      result_.accounting.push_back(f.acct);
      result_.frames_per_ue.push_back(std::move(f.frames));
    }
    return std::move(result_);
  }

  SimConfig cfg_;
  Algorithm algo_;
  TimeUs end_us_ = 0;
  TimeUs slot_us_ = 500;
  TimeUs now_ = 0;
  int n_rbg_window_ = 0;
  double link_eff_ = 1.0;
  std::uint64_t seq_ = 0;
  std::vector<Flow> flows_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  SimResult result_;
};

}  // namespace

SimResult run(const SimConfig& cfg, Algorithm algo, const std::vector<UeSetup>& setups) {
  Engine engine(cfg, algo, setups);
  return engine.run_all();
}

}  // namespace uxsim
