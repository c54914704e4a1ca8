#ifndef UXSIM_SCENARIO_HPP
#define UXSIM_SCENARIO_HPP

#include <map>
#include <string>
#include <vector>

#include "uxsim/config.hpp"
#include "uxsim/metrics.hpp"
#include "uxsim/sim_core.hpp"

namespace uxsim {

// Deterministic per-UE channel traces and scene timelines for one replication.
// Independent of the algorithm so all algorithms face identical conditions.
std::vector<UeSetup> build_ue_setups(const ScenarioConfig& cfg, int n_ues, int replication);

struct RunOutput {
  SimResult result;
  RunMetrics metrics;
};

RunOutput execute_run(const ScenarioConfig& cfg, Algorithm algo, int n_ues, int replication,
                      bool collect_events = true);

// `run` subcommand: one scenario per configured algorithm with full logs.
void scenario_run(const ScenarioConfig& cfg, const std::string& out_dir);

struct SweepPointStats {
  std::vector<double> ratios;     // per replication
  double satisfaction_mean = 0.0;
  double bitrate_mean = 0.0;      // mean source bitrate over UEs and replications
  double p99_mean = 0.0;          // mean over UEs of per-UE p99 delay
};

struct SweepOutcome {
  std::map<Algorithm, std::map<int, SweepPointStats>> points;
  std::map<Algorithm, SweepResult> sweeps;
  std::map<Algorithm, int> capacity;
};

SweepOutcome scenario_sweep(const ScenarioConfig& cfg, const std::string& out_dir,
                            bool write_outputs = true);

struct TransientOutcome {
  std::map<Algorithm, SimResult> results;
  std::map<Algorithm, RunMetrics> metrics;
};

// Requires a step-drop channel; runs every configured algorithm over identical
// traces and seeds.
TransientOutcome scenario_transient(const ScenarioConfig& cfg, const std::string& out_dir,
                                    bool write_outputs = true);

}  // namespace uxsim

#endif  // UXSIM_SCENARIO_HPP
