#include "uxsim/scenario.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "uxsim/rng.hpp"
#include "uxsim/svg_chart.hpp"

namespace uxsim {

namespace {

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

std::ofstream open_csv(const std::string& path, const std::string& header) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write output file: " + path);
  out << header << "\n";
  return out;
}

// Display due time per frame under the zero-buffer playout clock; -1 when the
// display never starts or the frame precedes it.
std::vector<TimeUs> display_due_times(const std::vector<FrameRecord>& frames, int fps,
                                      double offset_ms) {
  std::vector<TimeUs> due(frames.size(), -1);
  int first = -1;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].decoded_us >= 0) {
      first = static_cast<int>(i);
      break;
    }
  }
  if (first < 0) return due;
  TimeUs clock0 = frames[static_cast<std::size_t>(first)].decoded_us + us_from_ms(offset_ms);
  for (std::size_t i = static_cast<std::size_t>(first); i < frames.size(); ++i) {
    due[i] = clock0 + (static_cast<std::int64_t>(i) - first) * 1000000LL / fps;
  }
  return due;
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs tasks[0..n) on a small worker pool; rethrows the first failure.
void parallel_for(int n_tasks, int jobs, const std::function<void(int)>& task) {
  jobs = std::min(resolve_jobs(jobs), n_tasks);
  if (jobs <= 1) {
    for (int i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      while (!failed.load()) {
        int i = next.fetch_add(1);
        if (i >= n_tasks) break;
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

void write_frame_log(const std::string& path, const SimResult& result) {
  auto out = open_csv(
      path, "ue_id,frame_index,gen_ms,size_bits,enqueue_ms,delivered_ms,decoded_ms,quality_db,late_ms");
  for (const auto& frames : result.frames_per_ue) {
    auto due = display_due_times(frames, result.fps, result.playout_offset_ms);
    const TimeUs horizon = us_from_s(result.duration_s);
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const auto& f = frames[i];
      double late = 0.0;
      if (due[i] >= 0) {
        TimeUs shown = f.decoded_us >= 0 ? f.decoded_us : horizon;
        late = std::max(0.0, ms_from_us(shown - due[i]));
      }
      out << f.ue_id << "," << f.frame_index << "," << fmt(ms_from_us(f.gen_us), 3) << ","
          << f.size_bits << "," << fmt(ms_from_us(f.enqueue_us), 3) << ","
          << (f.delivered_us >= 0 ? fmt(ms_from_us(f.delivered_us), 3) : "-1") << ","
          << (f.decoded_us >= 0 ? fmt(ms_from_us(f.decoded_us), 3) : "-1") << ","
          << fmt(f.quality_db, 4) << "," << fmt(late, 3) << "\n";
    }
  }
}

void write_alloc_log(const std::string& path, const SimResult& result) {
  auto out = open_csv(path, "timestamp_ms,ue_id,se,g_n,rbgs_allocated,bitrate_mbps,satisfied");
  for (const auto& e : result.alloc_events) {
    out << fmt(ms_from_us(e.t_us), 3) << "," << e.ue_id << "," << fmt(e.se, 6) << "," << e.g_min
        << "," << e.rbgs_allocated << "," << fmt(e.bitrate_mbps, 6) << "," << (e.satisfied ? 1 : 0)
        << "\n";
  }
}

void write_ctrl_log(const std::string& path, Algorithm algo, const SimResult& result) {
  auto out = open_csv(path, "timestamp_ms,ue_id,controller,trigger,value,new_rate_mbps");
  for (const auto& e : result.ctrl_events) {
    out << fmt(ms_from_us(e.t_us), 3) << "," << e.ue_id << "," << algorithm_name(algo) << ","
        << ctrl_trigger_name(e.trigger) << "," << fmt(e.value, 6) << "," << fmt(e.new_rate_mbps, 6)
        << "\n";
  }
}

}  // namespace

std::vector<UeSetup> build_ue_setups(const ScenarioConfig& cfg, int n_ues, int replication) {
  std::vector<UeSetup> setups;
  setups.reserve(static_cast<std::size_t>(n_ues));
  const auto rep = static_cast<std::uint64_t>(replication);
  const auto library = cfg.scene_library();

  SinrTrace shared_file_trace;
  if (cfg.channel.kind == "file") shared_file_trace = load_sinr_trace(cfg.channel.trace_file);

  // Replications cycle through a fixed 10-cell grid from the weak end of the
  // base range to the strong end, mirroring a heterogeneous deployment; UE
  // offsets and walks stay random per replication.
  double cell_base = 0.0;
  if (cfg.channel.kind == "random-walk") {
    double span = cfg.channel.cell_base_high_db - cfg.channel.cell_base_low_db;
    cell_base = cfg.channel.cell_base_low_db +
                span * (static_cast<double>(replication % 10) + 0.5) / 10.0;
  }

  for (int ue = 0; ue < n_ues; ++ue) {
    const auto ue_tag = static_cast<std::uint64_t>(ue);
    UeSetup setup;

    if (cfg.channel.kind == "file") {
      setup.trace = shared_file_trace;
    } else {
      TraceSpec spec;
      spec.sample_period_ms = cfg.channel.sample_period_ms;
      spec.duration_s = cfg.sim.duration_s;
      if (cfg.channel.kind == "constant") {
        spec.kind = TraceKind::Constant;
        spec.level_db = cfg.channel.level_db;
      } else if (cfg.channel.kind == "step-drop") {
        spec.kind = TraceKind::StepDrop;
        spec.level_db = cfg.channel.step_from_db;
        spec.drop_to_db = cfg.channel.step_to_db;
        spec.drop_at_s = cfg.channel.step_at_s;
      } else {
        spec.kind = TraceKind::RandomWalk;
        Rng mean_rng(derive_seed(cfg.sim.seed, 8, rep, ue_tag));
        spec.level_db =
            cell_base + mean_rng.uniform(-cfg.channel.ue_spread_db, cfg.channel.ue_spread_db);
        spec.sigma_db = cfg.channel.sigma_db;
        spec.revert = cfg.channel.revert;
        spec.min_db = cfg.channel.min_db;
        spec.max_db = cfg.channel.max_db;
      }
      setup.trace = synthesize_trace(spec, derive_seed(cfg.sim.seed, 9, rep, ue_tag));
    }

    SceneProcess process;
    process.library = library;
    process.mean_duration_s = cfg.scene_mean_duration_s;
    process.rng_seed = derive_seed(cfg.sim.seed, 10, rep, ue_tag);
    setup.scenes = sample_scene_timeline(process, cfg.sim.duration_s);

    setups.push_back(std::move(setup));
  }
  return setups;
}

RunOutput execute_run(const ScenarioConfig& cfg, Algorithm algo, int n_ues, int replication,
                      bool collect_events) {
  SimConfig sim = cfg.sim;
  sim.n_ues = n_ues;
  sim.seed = derive_seed(cfg.sim.seed, 555, static_cast<std::uint64_t>(replication));
  sim.collect_allocation_events = collect_events;
  sim.collect_controller_events = collect_events;

  auto setups = build_ue_setups(cfg, n_ues, replication);
  RunOutput out{run(sim, algo, setups), {}};
  out.metrics = compute_run_metrics(out.result, cfg.sim.ux.target_db, cfg.sim.d_stall_ms);
  return out;
}

void scenario_run(const ScenarioConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  save_scenario_config(cfg, out_dir + "/config_echo.ini");

  auto summary = open_csv(out_dir + "/summary.csv",
                          "ue_id,algorithm,avg_bitrate_mbps,pct_frames_at_target,msd_ms,"
                          "p99_delay_ms,satisfied");
  for (Algorithm algo : cfg.algorithms) {
    RunOutput run_out = execute_run(cfg, algo, cfg.sim.n_ues, 0, true);
    const std::string tag = algorithm_name(algo);
    write_frame_log(out_dir + "/frames_" + tag + ".csv", run_out.result);
    write_ctrl_log(out_dir + "/controller_" + tag + ".csv", algo, run_out.result);
    if (algo == Algorithm::MaxCap || algo == Algorithm::MaxMin) {
      write_alloc_log(out_dir + "/alloc_" + tag + ".csv", run_out.result);
    }
    for (const auto& ue : run_out.metrics.per_ue) {
      summary << ue.ue_id << "," << tag << "," << fmt(ue.avg_bitrate_mbps, 6) << ","
              << fmt(ue.quality_fraction, 6) << "," << fmt(ue.msd_ms, 3) << ","
              << fmt(ue.p99_frame_delay_ms, 3) << "," << (ue.satisfied ? 1 : 0) << "\n";
    }
  }
}

SweepOutcome scenario_sweep(const ScenarioConfig& cfg, const std::string& out_dir,
                            bool write_outputs) {
  struct Task {
    Algorithm algo;
    int n_ues;
    int rep;
  };
  struct Sample {
    double ratio = 0.0;
    double bitrate = 0.0;
    double p99 = 0.0;
  };

  std::vector<Task> tasks;
  for (Algorithm algo : cfg.algorithms) {
    for (int n = cfg.sweep_from; n <= cfg.sweep_to; ++n) {
      for (int rep = 0; rep < cfg.replications; ++rep) tasks.push_back({algo, n, rep});
    }
  }

  std::vector<Sample> samples(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), cfg.jobs, [&](int i) {
    const Task& t = tasks[static_cast<std::size_t>(i)];
    RunOutput out = execute_run(cfg, t.algo, t.n_ues, t.rep, false);
    Sample s;
    s.ratio = out.metrics.satisfaction_ratio;
    double bit_sum = 0.0, p99_sum = 0.0;
    for (const auto& ue : out.metrics.per_ue) {
      bit_sum += ue.avg_bitrate_mbps;
      p99_sum += ue.p99_frame_delay_ms;
    }
    auto n_ues = static_cast<double>(out.metrics.per_ue.size());
    s.bitrate = n_ues > 0 ? bit_sum / n_ues : 0.0;
    s.p99 = n_ues > 0 ? p99_sum / n_ues : 0.0;
    samples[static_cast<std::size_t>(i)] = s;
  });

  SweepOutcome outcome;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    auto& point = outcome.points[t.algo][t.n_ues];
    point.ratios.push_back(samples[i].ratio);
    point.satisfaction_mean += samples[i].ratio;
    point.bitrate_mean += samples[i].bitrate;
    point.p99_mean += samples[i].p99;
    outcome.sweeps[t.algo].add(t.n_ues, samples[i].ratio);
  }
  for (auto& [algo, by_n] : outcome.points) {
    for (auto& [n, point] : by_n) {
      auto reps = static_cast<double>(point.ratios.size());
      point.satisfaction_mean /= reps;
      point.bitrate_mean /= reps;
      point.p99_mean /= reps;
    }
    outcome.capacity[algo] =
        qoe_capacity(outcome.sweeps[algo], cfg.capacity_threshold, cfg.capacity_use_worst);
  }

  if (write_outputs) {
    std::filesystem::create_directories(out_dir);
    save_scenario_config(cfg, out_dir + "/config_echo.ini");

    auto out = open_csv(out_dir + "/sweep_summary.csv",
                        "algorithm,n_ues,satisfaction_ratio,avg_bitrate_mbps,p99_delay_ms");
    for (const auto& [algo, by_n] : outcome.points) {
      for (const auto& [n, point] : by_n) {
        out << algorithm_name(algo) << "," << n << "," << fmt(point.satisfaction_mean, 6) << ","
            << fmt(point.bitrate_mean, 6) << "," << fmt(point.p99_mean, 3) << "\n";
      }
    }

    auto cap = open_csv(out_dir + "/capacity.csv", "algorithm,qoe_capacity");
    for (const auto& [algo, capacity] : outcome.capacity) {
      cap << algorithm_name(algo) << "," << capacity << "\n";
    }

    std::vector<ChartSeries> sat, bit, p99;
    for (const auto& [algo, by_n] : outcome.points) {
      ChartSeries s{algorithm_name(algo), {}, {}}, b{algorithm_name(algo), {}, {}},
          p{algorithm_name(algo), {}, {}};
      for (const auto& [n, point] : by_n) {
        s.x.push_back(n);
        s.y.push_back(point.satisfaction_mean);
        b.x.push_back(n);
        b.y.push_back(point.bitrate_mean);
        p.x.push_back(n);
        p.y.push_back(point.p99_mean);
      }
      sat.push_back(std::move(s));
      bit.push_back(std::move(b));
      p99.push_back(std::move(p));
    }
    write_line_chart(out_dir + "/sweep_satisfaction.svg", "Ratio of satisfied UEs", "UEs per cell",
                     "satisfaction ratio", sat);
    write_line_chart(out_dir + "/sweep_bitrate.svg", "Average source bitrate", "UEs per cell",
                     "Mbps", bit);
    write_line_chart(out_dir + "/sweep_p99_delay.svg", "99th percentile frame delay",
                     "UEs per cell", "ms", p99);
  }
  return outcome;
}

TransientOutcome scenario_transient(const ScenarioConfig& cfg, const std::string& out_dir,
                                    bool write_outputs) {
  if (cfg.channel.kind != "step-drop") {
    throw ConfigError("transient scenario requires [channel] kind = step-drop");
  }

  TransientOutcome outcome;
  for (Algorithm algo : cfg.algorithms) {
    RunOutput out = execute_run(cfg, algo, 1, 0, true);
    outcome.metrics[algo] = out.metrics;
    outcome.results[algo] = std::move(out.result);
  }

  if (write_outputs) {
    std::filesystem::create_directories(out_dir);
    save_scenario_config(cfg, out_dir + "/config_echo.ini");

    const auto setups = build_ue_setups(cfg, 1, 0);
    const SinrTrace& trace = setups.at(0).trace;

    std::vector<ChartSeries> bitrate_series, delay_series;
    for (const auto& [algo, result] : outcome.results) {
      const auto& frames = result.frames_per_ue.at(0);
      auto due = display_due_times(frames, result.fps, result.playout_offset_ms);
      const TimeUs horizon = us_from_s(result.duration_s);

      auto out = open_csv(
          out_dir + "/transient_" + algorithm_name(algo) + ".csv",
          "time_ms,sinr_db,bitrate_mbps,frame_delay_ms,late_ms,in_stall,displayed_quality_db");
      ChartSeries bs{algorithm_name(algo), {}, {}}, ds{algorithm_name(algo), {}, {}};
      // Frame shown at each due time: the latest frame decoded by then.
      std::size_t shown_idx = 0;
      bool any_shown = false;
      for (std::size_t i = 0; i < frames.size(); ++i) {
        const auto& f = frames[i];
        double t_ms = ms_from_us(f.gen_us);
        double delay = f.decoded_us >= 0 ? f.delay_ms() : -1.0;
        double late = 0.0;
        double displayed_quality = f.quality_db;
        if (due[i] >= 0) {
          TimeUs shown = f.decoded_us >= 0 ? f.decoded_us : horizon;
          late = std::max(0.0, ms_from_us(shown - due[i]));
          for (std::size_t j = shown_idx + (any_shown ? 1 : 0); j < frames.size(); ++j) {
            if (frames[j].decoded_us >= 0 && frames[j].decoded_us <= due[i]) {
              shown_idx = j;
              any_shown = true;
            }
            if (frames[j].gen_us > due[i]) break;
          }
          if (any_shown) displayed_quality = frames[shown_idx].quality_db;
        }
        out << fmt(t_ms, 3) << "," << fmt(trace.at_ms(t_ms), 4) << ","
            << fmt(f.encoding_rate_mbps, 6) << "," << fmt(delay, 3) << "," << fmt(late, 3) << ","
            << (late > 0.0 ? 1 : 0) << "," << fmt(displayed_quality, 4) << "\n";
        bs.x.push_back(t_ms);
        bs.y.push_back(f.encoding_rate_mbps);
        if (delay >= 0.0) {
          ds.x.push_back(t_ms);
          ds.y.push_back(delay);
        }
      }
      bitrate_series.push_back(std::move(bs));
      delay_series.push_back(std::move(ds));
    }

    ChartSeries sinr{"sinr", {}, {}};
    for (std::size_t i = 0; i < trace.samples_db.size(); ++i) {
      sinr.x.push_back(static_cast<double>(i) * trace.sample_period_ms);
      sinr.y.push_back(trace.samples_db[i]);
    }
    write_line_chart(out_dir + "/transient_sinr.svg", "SINR trace", "time (ms)", "SINR (dB)",
                     {sinr});
    write_line_chart(out_dir + "/transient_bitrate.svg", "Source bitrate", "time (ms)", "Mbps",
                     bitrate_series);
    write_line_chart(out_dir + "/transient_delay.svg", "Frame delay", "time (ms)", "ms",
                     delay_series);
  }
  return outcome;
}

}  // namespace uxsim
