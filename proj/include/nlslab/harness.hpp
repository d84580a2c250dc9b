#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/config.hpp"
#include "nlslab/integrator.hpp"
#include "nlslab/scattering.hpp"

namespace nlslab {

inline constexpr const char* kToolVersion = "nlslab 0.1.0";

// ---------------------------------------------------------------------------
// Configuration text: one `dotted.key = value` per line, `#` comments.
// Lists are comma separated. A `preset = NAME` line seeds every key from the
// named preset before the remaining lines are applied.

SimulationConfig parse_config_text(const std::string& text);
SimulationConfig parse_config(const std::filesystem::path& path);

/// Canonical text form; parse_config_text(to_config_text(c)) reproduces c.
std::string to_config_text(const SimulationConfig& cfg);

/// Applies one key/value pair; throws ConfigError for unknown keys or bad values.
void apply_config_key(SimulationConfig& cfg, const std::string& key, const std::string& value);

// ---------------------------------------------------------------------------
// Presets

struct PresetInfo {
  std::string name;
  std::string description;
  std::vector<std::string> flags;  ///< e.g. "conditional"
};

std::vector<PresetInfo> list_presets();
bool is_preset(const std::string& name);
SimulationConfig preset(const std::string& name);

// ---------------------------------------------------------------------------
// Diagnostic series

struct ColumnInfo {
  std::string name;
  std::string unit;
  std::string description;
};

/// Named real columns sharing a strictly increasing time column "t".
class DiagnosticSeries {
 public:
  DiagnosticSeries() = default;
  explicit DiagnosticSeries(std::vector<ColumnInfo> columns);

  const std::vector<ColumnInfo>& columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return data_.empty() ? 0 : data_.front().size(); }
  bool has(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;

  /// Values in column order; t must exceed the previous row's t.
  void add_row(const std::vector<double>& values);

  std::string to_csv() const;
  static DiagnosticSeries from_csv(const std::string& text);
  /// JSON sidecar describing the columns.
  std::string schema_json() const;

 private:
  std::vector<ColumnInfo> columns_;
  std::vector<std::vector<double>> data_;
};

// ---------------------------------------------------------------------------
// Runs

enum class Classification { scattering_like, global_bounded, blowup, untrusted };

std::string to_string(Classification c);

struct ClassificationInputs {
  RunOutcome outcome = RunOutcome::completed;
  bool monitor_clean = false;
  std::vector<CauchyIncrement> increments;
  double t_start = 5.0;
  double threshold = 1e-3;
  std::vector<double> kinetic;
  double energy0 = 0.0;
  double growth_limit = 400.0;
};

/// scattering-like: completed, kinetic bounded and some increment at t >= t_start
/// below threshold. global-bounded: completed and bounded without the
/// certificate. blowup: blowup-detected with a clean monitor. untrusted otherwise.
Classification classify_regime(const ClassificationInputs& in);

struct RunManifest {
  std::string run_id;
  std::string name;
  std::string config_text;
  RunOutcome outcome = RunOutcome::completed;
  Classification classification = Classification::untrusted;
  std::string stop_reason;
  double t_final = 0.0;
  std::string criterion_verdict;
  std::vector<std::string> regime_flags;
  std::string tool_version = kToolVersion;
  std::map<std::string, std::string> checksums;  ///< file name -> sha256 hex
  std::filesystem::path directory;
};

struct RunOptions {
  std::filesystem::path out_root;  ///< empty: default_output_root()
  bool write_outputs = true;
};

/// $NLSLAB_OUT, else ./nlslab_runs.
std::filesystem::path default_output_root();

/// Stable run id: config name plus a short digest of the canonical config text.
std::string run_id_for(const SimulationConfig& cfg);

/// Runs evolve and the diagnostics pipeline, then writes series.csv,
/// series.json, steps.csv, increments.csv, linear_flow.csv, summary.json and
/// manifest.json into a staging directory renamed to <out_root>/<run_id>/.
RunManifest run_scenario(const SimulationConfig& cfg, const RunOptions& options = {});
RunManifest run_scenario(const std::string& preset_name, const RunOptions& options = {});

/// Reads a manifest and verifies every listed checksum (DataError on mismatch).
RunManifest read_manifest(const std::filesystem::path& run_dir);

/// Recomputes the classification from stored files without modifying them.
Classification classify_run_dir(const std::filesystem::path& run_dir);

/// Text summary plus whitespace-separated columns with a '#' header.
std::string report_run_dir(const std::filesystem::path& run_dir);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepSpec {
  SimulationConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;  ///< key -> values
};

/// Base config lines plus `vary.<key> = v1, v2, ...` lines.
SweepSpec parse_sweep_text(const std::string& text);
SweepSpec parse_sweep(const std::filesystem::path& path);

/// Cartesian product of the axes, first axis slowest.
std::vector<SimulationConfig> expand_sweep(const SweepSpec& spec);

struct SweepEntry {
  std::size_t index = 0;
  std::string run_id;
  std::map<std::string, std::string> overrides;
  std::optional<RunManifest> manifest;
  std::string error;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  ///< ordered by index
  std::filesystem::path index_path;
};

/// Runs every config on `workers` threads and maintains index.json in out_root.
SweepResult sweep(const SweepSpec& spec, std::size_t workers, const RunOptions& options = {});

/// SHA-256 hex digest.
std::string sha256_hex(const std::string& data);

}  // namespace nlslab
