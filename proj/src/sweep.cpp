#include <algorithm>
#include <atomic>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <sstream>
#include <thread>

#include "nlslab/harness.hpp"

namespace nlslab {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

json index_json(const std::vector<SweepEntry>& entries) {
  json runs = json::array();
  for (const auto& e : entries) {
    json r = {{"index", e.index}, {"run_id", e.run_id}};
    json ov = json::object();
    for (const auto& [k, v] : e.overrides) ov[k] = v;
    r["overrides"] = ov;
    if (e.manifest) {
      r["status"] = "done";
      r["outcome"] = to_string(e.manifest->outcome);
      r["classification"] = to_string(e.manifest->classification);
      r["directory"] = e.manifest->directory.string();
      r["series_sha256"] = e.manifest->checksums.at("series.csv");
    } else if (!e.error.empty()) {
      r["status"] = "failed";
      r["error"] = e.error;
    } else {
      r["status"] = "pending";
    }
    runs.push_back(r);
  }
  return {{"tool_version", kToolVersion}, {"runs", runs}};
}

void write_index(const fs::path& path, const std::vector<SweepEntry>& entries) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << index_json(entries).dump(2) << "\n";
  }
  fs::rename(tmp, path);
}

}  // namespace

SweepSpec parse_sweep_text(const std::string& text) {
  SweepSpec spec;
  std::string base_text;
  std::vector<std::string> violations;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string body = line;
    if (const auto hash = body.find('#'); hash != std::string::npos) body.erase(hash);
    body = trim(body);
    if (body.rfind("vary.", 0) != 0) {
      base_text += line + "\n";
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      violations.push_back("sweep line '" + body + "' lacks '='");
      continue;
    }
    const std::string key = trim(body.substr(5, eq - 5));
    std::vector<std::string> values;
    std::stringstream vs(body.substr(eq + 1));
    std::string v;
    while (std::getline(vs, v, ',')) {
      v = trim(v);
      if (!v.empty()) values.push_back(v);
    }
    if (values.empty()) violations.push_back("sweep axis " + key + " has no values");
    spec.axes.emplace_back(key, values);
  }
  try {
    spec.base = parse_config_text(base_text);
  } catch (const ConfigError& e) {
    violations.insert(violations.end(), e.violations().begin(), e.violations().end());
  }
  // Every axis value must yield a valid config on its own.
  for (const auto& [key, values] : spec.axes) {
    for (const auto& v : values) {
      SimulationConfig probe = spec.base;
      try {
        apply_config_key(probe, key, v);
      } catch (const ConfigError& e) {
        violations.insert(violations.end(), e.violations().begin(), e.violations().end());
      }
    }
  }
  if (!violations.empty()) throw ConfigError(std::move(violations));
  return spec;
}

SweepSpec parse_sweep(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read sweep file " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_text(ss.str());
}

namespace {

std::vector<std::map<std::string, std::string>> expand_overrides(const SweepSpec& spec) {
  std::vector<std::map<std::string, std::string>> out;
  if (spec.axes.empty()) return out;
  for (const auto& [key, values] : spec.axes)
    if (values.empty()) return out;
  std::vector<std::size_t> idx(spec.axes.size(), 0);
  while (true) {
    std::map<std::string, std::string> o;
    for (std::size_t a = 0; a < spec.axes.size(); ++a)
      o[spec.axes[a].first] = spec.axes[a].second[idx[a]];
    out.push_back(std::move(o));
    std::size_t a = spec.axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < spec.axes[a].second.size()) break;
      idx[a] = 0;
      if (a == 0) return out;
    }
  }
}

SimulationConfig apply_overrides(const SimulationConfig& base,
                                 const std::map<std::string, std::string>& overrides,
                                 std::size_t index) {
  SimulationConfig c = base;
  for (const auto& [k, v] : overrides) apply_config_key(c, k, v);
  c.name = base.name + "-" + std::to_string(index);
  return c;
}

}  // namespace

std::vector<SimulationConfig> expand_sweep(const SweepSpec& spec) {
  std::vector<SimulationConfig> out;
  const auto all = expand_overrides(spec);
  for (std::size_t i = 0; i < all.size(); ++i) out.push_back(apply_overrides(spec.base, all[i], i));
  return out;
}

SweepResult sweep(const SweepSpec& spec, std::size_t workers, const RunOptions& options) {
  const fs::path root = options.out_root.empty() ? default_output_root() : options.out_root;
  fs::create_directories(root);

  SweepResult result;
  result.index_path = root / "index.json";
  const auto all = expand_overrides(spec);
  for (std::size_t i = 0; i < all.size(); ++i) {
    SweepEntry e;
    e.index = i;
    e.overrides = all[i];
    result.entries.push_back(std::move(e));
  }

  std::mutex index_mutex;
  write_index(result.index_path, result.entries);

  std::atomic<std::size_t> next{0};
  RunOptions run_opts = options;
  run_opts.out_root = root;
  const auto worker = [&] {
    for (std::size_t i = next++; i < result.entries.size(); i = next++) {
      SweepEntry local = result.entries[i];
      try {
        const SimulationConfig cfg = apply_overrides(spec.base, local.overrides, i);
        local.run_id = run_id_for(cfg);
        local.manifest = run_scenario(cfg, run_opts);
      } catch (const std::exception& ex) {
        local.error = ex.what();
      }
      std::lock_guard lock(index_mutex);
      result.entries[i] = std::move(local);
      write_index(result.index_path, result.entries);
    }
  };

  const std::size_t n_threads = std::max<std::size_t>(1, std::min(workers, result.entries.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return result;
}

}  // namespace nlslab
