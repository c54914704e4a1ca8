#include "uxsim/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace uxsim {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + v + "'", line);
  }
}

int parse_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got '" + v + "'", line);
  }
}

std::uint64_t parse_u64(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    auto i = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError("expected an unsigned integer, got '" + v + "'", line);
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + v + "'", line);
}

std::vector<Algorithm> parse_algorithms(const std::string& v, int line) {
  std::vector<Algorithm> algos;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    auto algo = parse_algorithm(tok);
    if (!algo) throw ConfigError("unknown algorithm '" + tok + "'", line);
    algos.push_back(*algo);
  }
  if (algos.empty()) throw ConfigError("algorithm list is empty", line);
  return algos;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

IniFile IniFile::parse_text(const std::string& text) {
  IniFile ini;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line.erase(cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError("empty section name", lineno);
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (section.empty()) throw ConfigError("key outside any [section]", lineno);
    ini.sections[section][key] = {value, lineno};
  }
  return ini;
}

IniFile IniFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

ScenarioConfig scenario_from_ini(const IniFile& ini) {
  ScenarioConfig cfg;
  using Setter = std::function<void(ScenarioConfig&, const std::string&, int)>;
  // One setter per known key; anything else is a config error.
  const std::map<std::string, std::map<std::string, Setter>> keys = {
      {"scenario",
       {
           {"algorithms", [](ScenarioConfig& c, const std::string& v, int l) { c.algorithms = parse_algorithms(v, l); }},
           {"out_dir", [](ScenarioConfig& c, const std::string& v, int) { c.out_dir = v; }},
           {"seed", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.seed = parse_u64(v, l); }},
           {"jobs", [](ScenarioConfig& c, const std::string& v, int l) { c.jobs = parse_int(v, l); }},
           {"capacity_threshold", [](ScenarioConfig& c, const std::string& v, int l) { c.capacity_threshold = parse_double(v, l); }},
           {"capacity_use_worst", [](ScenarioConfig& c, const std::string& v, int l) { c.capacity_use_worst = parse_bool(v, l); }},
       }},
      {"sim",
       {
           {"n_ues", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.n_ues = parse_int(v, l); }},
           {"duration_s", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.duration_s = parse_double(v, l); }},
           {"fps", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.fps = parse_int(v, l); }},
           {"backhaul_delay_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.backhaul_delay_ms = parse_double(v, l); }},
           {"encode_delay_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.encode_delay_ms = parse_double(v, l); }},
           {"decode_delay_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.decode_delay_ms = parse_double(v, l); }},
           {"feedback_uplink_wait_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.feedback_uplink_wait_ms = parse_double(v, l); }},
           {"harq_delay_slots", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.harq_delay_slots = parse_int(v, l); }},
           {"playout_offset_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.playout_offset_ms = parse_double(v, l); }},
           {"d_stall_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.d_stall_ms = parse_double(v, l); }},
           {"frame_jitter_frac", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.frame_jitter_frac = parse_double(v, l); }},
       }},
      {"slot",
       {
           {"scs_khz", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.slot.scs_khz = parse_int(v, l); }},
           {"pattern", [](ScenarioConfig& c, const std::string& v, int) { c.sim.slot.pattern = v; }},
           {"rbgs_per_slot", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.slot.rbgs_per_slot = parse_int(v, l); }},
           {"s_slot_dl_fraction", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.slot.s_slot_dl_fraction = parse_double(v, l); }},
       }},
      {"link",
       {
           {"se_max", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.link.se_max = parse_double(v, l); }},
           {"attenuation", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.link.attenuation = parse_double(v, l); }},
           {"prb_per_rbg", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.link.prb_per_rbg = parse_int(v, l); }},
           {"data_symbols_per_slot", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.link.data_symbols_per_slot = parse_int(v, l); }},
           {"overhead_fraction", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.link.overhead_fraction = parse_double(v, l); }},
           {"target_bler", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.link.target_bler = parse_double(v, l); }},
       }},
      {"ux",
       {
           {"t_win_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.t_win_ms = parse_double(v, l); }},
           {"t_period_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.t_period_ms = parse_double(v, l); }},
           {"gamma_db", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.target_db = parse_double(v, l); }},
           {"q_min_db", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.maxmin.q_min_db = parse_double(v, l); }},
           {"q_max_db", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.maxmin.q_max_db = parse_double(v, l); }},
           {"tolerance_db", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.maxmin.tolerance_db = parse_double(v, l); }},
           {"signaling_delay_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.signaling_delay_ms = parse_double(v, l); }},
           {"link_margin", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.link_margin = parse_double(v, l); }},
           {"strict_budget", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.maxcap.strict_budget = parse_bool(v, l); }},
           {"round_robin_remainder", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.ux.maxcap.round_robin_remainder = parse_bool(v, l); }},
       }},
      {"rtt",
       {
           {"period_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rtt.report_period_ms = parse_double(v, l); }},
           {"window_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rtt.window_ms = parse_double(v, l); }},
           {"alpha_up", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rtt.alpha_up = parse_double(v, l); }},
           {"alpha_down", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rtt.alpha_down = parse_double(v, l); }},
           {"beta_low_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rtt.beta_low_ms = parse_double(v, l); }},
           {"beta_high_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rtt.beta_high_ms = parse_double(v, l); }},
       }},
      {"l4s",
       {
           {"beta_low_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.l4s.beta_low_ms = parse_double(v, l); }},
           {"beta_high_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.l4s.beta_high_ms = parse_double(v, l); }},
       }},
      {"prague",
       {
           {"additive_step_mbps", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.prague.additive_step_mbps = parse_double(v, l); }},
           {"ewma_gain", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.prague.ewma_gain = parse_double(v, l); }},
       }},
      {"source",
       {
           {"r_min_mbps", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rate_bounds.min_mbps = parse_double(v, l); }},
           {"r_max_mbps", [](ScenarioConfig& c, const std::string& v, int l) { c.sim.rate_bounds.max_mbps = parse_double(v, l); }},
           {"scene_mean_duration_s", [](ScenarioConfig& c, const std::string& v, int l) { c.scene_mean_duration_s = parse_double(v, l); }},
           {"scene_library", [](ScenarioConfig& c, const std::string& v, int) { c.scene_library_file = v; }},
       }},
      {"channel",
       {
           {"kind", [](ScenarioConfig& c, const std::string& v, int) { c.channel.kind = v; }},
           {"sample_period_ms", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.sample_period_ms = parse_double(v, l); }},
           {"cell_base_low_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.cell_base_low_db = parse_double(v, l); }},
           {"cell_base_high_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.cell_base_high_db = parse_double(v, l); }},
           {"ue_spread_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.ue_spread_db = parse_double(v, l); }},
           {"sigma_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.sigma_db = parse_double(v, l); }},
           {"revert", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.revert = parse_double(v, l); }},
           {"min_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.min_db = parse_double(v, l); }},
           {"max_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.max_db = parse_double(v, l); }},
           {"level_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.level_db = parse_double(v, l); }},
           {"step_from_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.step_from_db = parse_double(v, l); }},
           {"step_to_db", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.step_to_db = parse_double(v, l); }},
           {"step_at_s", [](ScenarioConfig& c, const std::string& v, int l) { c.channel.step_at_s = parse_double(v, l); }},
           {"trace_file", [](ScenarioConfig& c, const std::string& v, int) { c.channel.trace_file = v; }},
       }},
      {"sweep",
       {
           {"ues_from", [](ScenarioConfig& c, const std::string& v, int l) { c.sweep_from = parse_int(v, l); }},
           {"ues_to", [](ScenarioConfig& c, const std::string& v, int l) { c.sweep_to = parse_int(v, l); }},
           {"replications", [](ScenarioConfig& c, const std::string& v, int l) { c.replications = parse_int(v, l); }},
       }},
  };

  for (const auto& [section, entries] : ini.sections) {
    auto sec_it = keys.find(section);
    if (sec_it == keys.end()) {
      throw ConfigError("unknown section [" + section + "]", entries.begin()->second.line);
    }
    for (const auto& [key, entry] : entries) {
      auto key_it = sec_it->second.find(key);
      if (key_it == sec_it->second.end()) {
        throw ConfigError("unknown key '" + key + "' in [" + section + "]", entry.line);
      }
      key_it->second(cfg, entry.value, entry.line);
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  return scenario_from_ini(IniFile::parse_file(path));
}

void ScenarioConfig::validate() const {
  sim.validate();
  if (sweep_from < 1 || sweep_to < sweep_from) {
    throw ConfigError("sweep: need 1 <= ues_from <= ues_to");
  }
  if (replications < 1) throw ConfigError("sweep: replications must be >= 1");
  if (jobs < 0) throw ConfigError("scenario: jobs must be >= 0");
  if (algorithms.empty()) throw ConfigError("scenario: algorithm list is empty");
  if (channel.kind != "constant" && channel.kind != "random-walk" && channel.kind != "step-drop" &&
      channel.kind != "file") {
    throw ConfigError("channel: unknown kind '" + channel.kind + "'");
  }
  if (channel.kind == "file" && channel.trace_file.empty()) {
    throw ConfigError("channel: kind=file requires trace_file");
  }
  if (channel.kind == "file") {
    load_sinr_trace(channel.trace_file);  // fails early with the path in the message
  }
  if (!scene_library_file.empty()) {
    load_scene_library(scene_library_file);
  }
  if (!(capacity_threshold > 0.0 && capacity_threshold <= 1.0)) {
    throw ConfigError("scenario: capacity_threshold must be in (0, 1]");
  }
}

std::vector<Scene> ScenarioConfig::scene_library() const {
  return scene_library_file.empty() ? default_scene_library()
                                    : load_scene_library(scene_library_file);
}

void save_scenario_config(const ScenarioConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write config echo: " + path);

  out << "[scenario]\n";
  out << "algorithms = ";
  for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
    out << (i ? "," : "") << algorithm_name(cfg.algorithms[i]);
  }
  out << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  out << "seed = " << cfg.sim.seed << "\n";
  out << "jobs = " << cfg.jobs << "\n";
  out << "capacity_threshold = " << fmt(cfg.capacity_threshold) << "\n";
  out << "capacity_use_worst = " << (cfg.capacity_use_worst ? "true" : "false") << "\n";

  out << "\n[sim]\n";
  out << "n_ues = " << cfg.sim.n_ues << "\n";
  out << "duration_s = " << fmt(cfg.sim.duration_s) << "\n";
  out << "fps = " << cfg.sim.fps << "\n";
  out << "backhaul_delay_ms = " << fmt(cfg.sim.backhaul_delay_ms) << "\n";
  out << "encode_delay_ms = " << fmt(cfg.sim.encode_delay_ms) << "\n";
  out << "decode_delay_ms = " << fmt(cfg.sim.decode_delay_ms) << "\n";
  out << "feedback_uplink_wait_ms = " << fmt(cfg.sim.feedback_uplink_wait_ms) << "\n";
  out << "harq_delay_slots = " << cfg.sim.harq_delay_slots << "\n";
  out << "playout_offset_ms = " << fmt(cfg.sim.playout_offset_ms) << "\n";
  out << "d_stall_ms = " << fmt(cfg.sim.d_stall_ms) << "\n";
  out << "frame_jitter_frac = " << fmt(cfg.sim.frame_jitter_frac) << "\n";

  out << "\n[slot]\n";
  out << "scs_khz = " << cfg.sim.slot.scs_khz << "\n";
  out << "pattern = " << cfg.sim.slot.pattern << "\n";
  out << "rbgs_per_slot = " << cfg.sim.slot.rbgs_per_slot << "\n";
  out << "s_slot_dl_fraction = " << fmt(cfg.sim.slot.s_slot_dl_fraction) << "\n";

  out << "\n[link]\n";
  out << "se_max = " << fmt(cfg.sim.link.se_max) << "\n";
  out << "attenuation = " << fmt(cfg.sim.link.attenuation) << "\n";
  out << "prb_per_rbg = " << cfg.sim.link.prb_per_rbg << "\n";
  out << "data_symbols_per_slot = " << cfg.sim.link.data_symbols_per_slot << "\n";
  out << "overhead_fraction = " << fmt(cfg.sim.link.overhead_fraction) << "\n";
  out << "target_bler = " << fmt(cfg.sim.link.target_bler) << "\n";

  out << "\n[ux]\n";
  out << "t_win_ms = " << fmt(cfg.sim.ux.t_win_ms) << "\n";
  out << "t_period_ms = " << fmt(cfg.sim.ux.t_period_ms) << "\n";
  out << "gamma_db = " << fmt(cfg.sim.ux.target_db) << "\n";
  out << "q_min_db = " << fmt(cfg.sim.ux.maxmin.q_min_db) << "\n";
  out << "q_max_db = " << fmt(cfg.sim.ux.maxmin.q_max_db) << "\n";
  out << "tolerance_db = " << fmt(cfg.sim.ux.maxmin.tolerance_db) << "\n";
  out << "signaling_delay_ms = " << fmt(cfg.sim.ux.signaling_delay_ms) << "\n";
  out << "link_margin = " << fmt(cfg.sim.ux.link_margin) << "\n";
  out << "strict_budget = " << (cfg.sim.ux.maxcap.strict_budget ? "true" : "false") << "\n";
  out << "round_robin_remainder = " << (cfg.sim.ux.maxcap.round_robin_remainder ? "true" : "false")
      << "\n";

  out << "\n[rtt]\n";
  out << "period_ms = " << fmt(cfg.sim.rtt.report_period_ms) << "\n";
  out << "window_ms = " << fmt(cfg.sim.rtt.window_ms) << "\n";
  out << "alpha_up = " << fmt(cfg.sim.rtt.alpha_up) << "\n";
  out << "alpha_down = " << fmt(cfg.sim.rtt.alpha_down) << "\n";
  out << "beta_low_ms = " << fmt(cfg.sim.rtt.beta_low_ms) << "\n";
  out << "beta_high_ms = " << fmt(cfg.sim.rtt.beta_high_ms) << "\n";

  out << "\n[l4s]\n";
  out << "beta_low_ms = " << fmt(cfg.sim.l4s.beta_low_ms) << "\n";
  out << "beta_high_ms = " << fmt(cfg.sim.l4s.beta_high_ms) << "\n";

  out << "\n[prague]\n";
  out << "additive_step_mbps = " << fmt(cfg.sim.prague.additive_step_mbps) << "\n";
  out << "ewma_gain = " << fmt(cfg.sim.prague.ewma_gain) << "\n";

  out << "\n[source]\n";
  out << "r_min_mbps = " << fmt(cfg.sim.rate_bounds.min_mbps) << "\n";
  out << "r_max_mbps = " << fmt(cfg.sim.rate_bounds.max_mbps) << "\n";
  out << "scene_mean_duration_s = " << fmt(cfg.scene_mean_duration_s) << "\n";
  if (!cfg.scene_library_file.empty()) out << "scene_library = " << cfg.scene_library_file << "\n";

  out << "\n[channel]\n";
  out << "kind = " << cfg.channel.kind << "\n";
  out << "sample_period_ms = " << fmt(cfg.channel.sample_period_ms) << "\n";
  out << "cell_base_low_db = " << fmt(cfg.channel.cell_base_low_db) << "\n";
  out << "cell_base_high_db = " << fmt(cfg.channel.cell_base_high_db) << "\n";
  out << "ue_spread_db = " << fmt(cfg.channel.ue_spread_db) << "\n";
  out << "sigma_db = " << fmt(cfg.channel.sigma_db) << "\n";
  out << "revert = " << fmt(cfg.channel.revert) << "\n";
  out << "min_db = " << fmt(cfg.channel.min_db) << "\n";
  out << "max_db = " << fmt(cfg.channel.max_db) << "\n";
  out << "level_db = " << fmt(cfg.channel.level_db) << "\n";
  out << "step_from_db = " << fmt(cfg.channel.step_from_db) << "\n";
  out << "step_to_db = " << fmt(cfg.channel.step_to_db) << "\n";
  out << "step_at_s = " << fmt(cfg.channel.step_at_s) << "\n";
  if (!cfg.channel.trace_file.empty()) out << "trace_file = " << cfg.channel.trace_file << "\n";

  out << "\n[sweep]\n";
  out << "ues_from = " << cfg.sweep_from << "\n";
  out << "ues_to = " << cfg.sweep_to << "\n";
  out << "replications = " << cfg.replications << "\n";
}

}  // namespace uxsim
