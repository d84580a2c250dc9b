#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "nlslab/harness.hpp"

namespace nlslab {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError({key + ": expected a real number, got '" + v + "'"});
  return out;
}

std::size_t to_size(const std::string& key, const std::string& v) {
  std::size_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError({key + ": expected a nonnegative integer, got '" + v + "'"});
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError({key + ": expected a boolean, got '" + v + "'"});
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(to_double(key, item));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

Profile to_profile(const std::string& key, const std::string& v) {
  if (v == "gaussian") return Profile::gaussian;
  if (v == "chirped-gaussian") return Profile::chirped_gaussian;
  if (v == "ring") return Profile::ring;
  if (v == "custom-sample-file" || v == "file") return Profile::sample_file;
  throw ConfigError({key + ": unknown profile '" + v + "'"});
}

using Setter = std::function<void(SimulationConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"name", [](auto& c, auto&, auto& v) { c.name = v; }},
      {"model.n", [](auto& c, auto& k, auto& v) { c.n = static_cast<int>(to_size(k, v)); }},
      {"model.lambda1", [](auto& c, auto& k, auto& v) { c.lambda1 = to_double(k, v); }},
      {"model.lambda2", [](auto& c, auto& k, auto& v) { c.lambda2 = to_double(k, v); }},
      {"model.p1", [](auto& c, auto& k, auto& v) { c.p1 = to_double(k, v); }},
      {"model.p2", [](auto& c, auto& k, auto& v) { c.p2 = to_double(k, v); }},
      {"grid.N", [](auto& c, auto& k, auto& v) { c.points = to_size(k, v); }},
      {"grid.L", [](auto& c, auto& k, auto& v) { c.length = to_double(k, v); }},
      {"time.t_end", [](auto& c, auto& k, auto& v) { c.t_end = to_double(k, v); }},
      {"time.dt_init", [](auto& c, auto& k, auto& v) { c.dt_init = to_double(k, v); }},
      {"time.dt_min", [](auto& c, auto& k, auto& v) { c.dt_min = to_double(k, v); }},
      {"time.dt_max", [](auto& c, auto& k, auto& v) { c.dt_max = to_double(k, v); }},
      {"time.accuracy", [](auto& c, auto& k, auto& v) { c.accuracy_target = to_double(k, v); }},
      {"time.max_steps", [](auto& c, auto& k, auto& v) { c.max_steps = to_size(k, v); }},
      {"time.snapshots", [](auto& c, auto& k, auto& v) { c.snapshot_times = to_list(k, v); }},
      {"time.snapshot_interval",
       [](auto& c, auto& k, auto& v) { c.snapshot_interval = to_double(k, v); }},
      {"sentinel.eps_tail", [](auto& c, auto& k, auto& v) { c.eps_tail = to_double(k, v); }},
      {"sentinel.eps_bnd", [](auto& c, auto& k, auto& v) { c.eps_bnd = to_double(k, v); }},
      {"sentinel.interval", [](auto& c, auto& k, auto& v) { c.sentinel_interval = to_size(k, v); }},
      {"blowup.gradient_factor",
       [](auto& c, auto& k, auto& v) { c.blowup_gradient_factor = to_double(k, v); }},
      {"initial.profile", [](auto& c, auto& k, auto& v) { c.initial.profile = to_profile(k, v); }},
      {"initial.amplitude", [](auto& c, auto& k, auto& v) { c.initial.amplitude = to_double(k, v); }},
      {"initial.sigma", [](auto& c, auto& k, auto& v) { c.initial.width = to_double(k, v); }},
      {"initial.chirp", [](auto& c, auto& k, auto& v) { c.initial.chirp = to_double(k, v); }},
      {"initial.radius", [](auto& c, auto& k, auto& v) { c.initial.ring_radius = to_double(k, v); }},
      {"initial.offset", [](auto& c, auto& k, auto& v) { c.initial.offset = to_list(k, v); }},
      {"initial.file", [](auto& c, auto&, auto& v) { c.initial.sample_file = v; }},
      {"analysis.scattering_window",
       [](auto& c, auto& k, auto& v) { c.analysis.scattering_window = to_double(k, v); }},
      {"analysis.scattering_threshold",
       [](auto& c, auto& k, auto& v) { c.analysis.scattering_threshold = to_double(k, v); }},
      {"analysis.scattering_t_start",
       [](auto& c, auto& k, auto& v) { c.analysis.scattering_t_start = to_double(k, v); }},
      {"analysis.checkpoint_interval",
       [](auto& c, auto& k, auto& v) { c.analysis.checkpoint_interval = to_double(k, v); }},
      {"analysis.decay_t1", [](auto& c, auto& k, auto& v) { c.analysis.decay_t1 = to_double(k, v); }},
      {"analysis.decay_t2", [](auto& c, auto& k, auto& v) { c.analysis.decay_t2 = to_double(k, v); }},
      {"analysis.morawetz", [](auto& c, auto& k, auto& v) { c.analysis.morawetz = to_bool(k, v); }},
      {"analysis.linear_flow",
       [](auto& c, auto& k, auto& v) { c.analysis.linear_flow = to_bool(k, v); }},
      {"analysis.kinetic_growth_limit",
       [](auto& c, auto& k, auto& v) { c.analysis.kinetic_growth_limit = to_double(k, v); }},
  };
  return table;
}

}  // namespace

void apply_config_key(SimulationConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError({"unknown key '" + key + "'"});
  it->second(cfg, key, value);
}

SimulationConfig parse_config_text(const std::string& text) {
  SimulationConfig cfg;
  std::vector<std::string> violations;
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      violations.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "preset") {
      if (!is_preset(value)) {
        violations.push_back("unknown preset '" + value + "'");
      } else {
        cfg = preset(value);
      }
      continue;
    }
    entries.emplace_back(key, value);
  }
  for (const auto& [key, value] : entries) {
    try {
      apply_config_key(cfg, key, value);
    } catch (const ConfigError& e) {
      violations.insert(violations.end(), e.violations().begin(), e.violations().end());
    }
  }
  const auto semantic = cfg.validate();
  violations.insert(violations.end(), semantic.begin(), semantic.end());
  if (!violations.empty()) throw ConfigError(std::move(violations));
  return cfg;
}

SimulationConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string to_config_text(const SimulationConfig& c) {
  std::ostringstream os;
  const auto kv = [&](const char* k, const std::string& v) { os << k << " = " << v << "\n"; };
  kv("name", c.name);
  kv("model.n", std::to_string(c.n));
  kv("model.lambda1", fmt(c.lambda1));
  kv("model.lambda2", fmt(c.lambda2));
  kv("model.p1", fmt(c.p1));
  kv("model.p2", fmt(c.p2));
  kv("grid.N", std::to_string(c.points));
  kv("grid.L", fmt(c.length));
  kv("time.t_end", fmt(c.t_end));
  kv("time.dt_init", fmt(c.dt_init));
  kv("time.dt_min", fmt(c.dt_min));
  kv("time.dt_max", fmt(c.dt_max));
  kv("time.accuracy", fmt(c.accuracy_target));
  kv("time.max_steps", std::to_string(c.max_steps));
  if (!c.snapshot_times.empty()) kv("time.snapshots", join(c.snapshot_times));
  kv("time.snapshot_interval", fmt(c.snapshot_interval));
  kv("sentinel.eps_tail", fmt(c.eps_tail));
  kv("sentinel.eps_bnd", fmt(c.eps_bnd));
  kv("sentinel.interval", std::to_string(c.sentinel_interval));
  kv("blowup.gradient_factor", fmt(c.blowup_gradient_factor));
  kv("initial.profile", to_string(c.initial.profile));
  kv("initial.amplitude", fmt(c.initial.amplitude));
  kv("initial.sigma", fmt(c.initial.width));
  kv("initial.chirp", fmt(c.initial.chirp));
  kv("initial.radius", fmt(c.initial.ring_radius));
  if (!c.initial.offset.empty()) kv("initial.offset", join(c.initial.offset));
  if (!c.initial.sample_file.empty()) kv("initial.file", c.initial.sample_file);
  kv("analysis.scattering_window", fmt(c.analysis.scattering_window));
  kv("analysis.scattering_threshold", fmt(c.analysis.scattering_threshold));
  kv("analysis.scattering_t_start", fmt(c.analysis.scattering_t_start));
  kv("analysis.checkpoint_interval", fmt(c.analysis.checkpoint_interval));
  kv("analysis.decay_t1", fmt(c.analysis.decay_t1));
  kv("analysis.decay_t2", fmt(c.analysis.decay_t2));
  kv("analysis.morawetz", c.analysis.morawetz ? "true" : "false");
  kv("analysis.linear_flow", c.analysis.linear_flow ? "true" : "false");
  kv("analysis.kinetic_growth_limit", fmt(c.analysis.kinetic_growth_limit));
  return os.str();
}

}  // namespace nlslab
