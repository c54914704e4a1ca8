#ifndef UXSIM_CONFIG_HPP
#define UXSIM_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "uxsim/sim_core.hpp"

namespace uxsim {

// Flat "[section] / key = value" text format. '#' and ';' start comments.
struct IniFile {
  struct Entry {
    std::string value;
    int line = 0;
  };
  // section -> key -> entry
  std::map<std::string, std::map<std::string, Entry>> sections;

  static IniFile parse_file(const std::string& path);
  static IniFile parse_text(const std::string& text);
};

// Per-UE channel ensemble for synthetic runs.
struct ChannelConfig {
  std::string kind = "random-walk";  // constant | random-walk | step-drop | file
  double sample_period_ms = 10.0;

  // random-walk: replications cycle through a fixed 10-cell grid of base
  // levels spanning [low, high]; every UE draws an offset around its cell's
  // base and a mean-reverting fading walk around that mean.
  double cell_base_low_db = 10.0;
  double cell_base_high_db = 29.0;
  double ue_spread_db = 7.0;
  double sigma_db = 0.8;
  double revert = 0.04;
  double min_db = -2.0;
  double max_db = 34.0;

  double level_db = 20.0;  // constant

  double step_from_db = 25.0;  // step-drop
  double step_to_db = 3.0;
  double step_at_s = 5.0;

  std::string trace_file;  // file
};

struct ScenarioConfig {
  SimConfig sim;
  ChannelConfig channel;
  std::vector<Algorithm> algorithms = {Algorithm::MaxCap, Algorithm::MaxMin, Algorithm::Prague,
                                       Algorithm::Rtt};
  std::string scene_library_file;  // empty: built-in default library
  double scene_mean_duration_s = 3.5;

  int sweep_from = 1;
  int sweep_to = 10;
  int replications = 10;

  std::string out_dir = "out";
  int jobs = 1;
  double capacity_threshold = 0.9;
  bool capacity_use_worst = false;

  void validate() const;
  std::vector<Scene> scene_library() const;
};

// Defaults overlaid with the file's overrides. Unknown sections or keys and
// invariant violations raise ConfigError with the offending line.
ScenarioConfig load_scenario_config(const std::string& path);
ScenarioConfig scenario_from_ini(const IniFile& ini);

// Effective-configuration echo; loading the echo reproduces the same scenario.
void save_scenario_config(const ScenarioConfig& cfg, const std::string& path);

}  // namespace uxsim

#endif  // UXSIM_CONFIG_HPP
