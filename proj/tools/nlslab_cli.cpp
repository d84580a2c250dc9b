#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "nlslab/harness.hpp"

namespace {

constexpr int kExitConfig = 64;

int exit_code(nlslab::RunOutcome o) {
  switch (o) {
    case nlslab::RunOutcome::completed: return 0;
    case nlslab::RunOutcome::blowup_detected: return 2;
    case nlslab::RunOutcome::resolution_lost: return 3;
  }
  return 1;
}

nlslab::SimulationConfig load(const std::string& target) {
  if (nlslab::is_preset(target) && !std::filesystem::exists(target)) return nlslab::preset(target);
  return nlslab::parse_config(target);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral simulator for combined power-type NLS"};
  app.set_version_flag("--version", nlslab::kToolVersion);
  app.require_subcommand(1);

  std::string target, out_dir, snapshots;
  auto* run = app.add_subcommand("run", "Run a config file or preset");
  run->add_option("config", target, "config file or preset name")->required();
  run->add_option("--out", out_dir, "output root (default $NLSLAB_OUT or ./nlslab_runs)");
  run->add_option("--snapshots", snapshots, "comma-separated snapshot times");

  std::string spec_path;
  std::size_t workers = 1;
  auto* sw = app.add_subcommand("sweep", "Run every point of a sweep spec");
  sw->add_option("spec", spec_path, "sweep spec file")->required();
  sw->add_option("--workers", workers, "concurrent runs")->check(CLI::PositiveNumber);
  sw->add_option("--out", out_dir, "output root");

  std::string run_dir;
  auto* cls = app.add_subcommand("classify", "Reclassify a stored run");
  cls->add_option("run_dir", run_dir)->required()->check(CLI::ExistingDirectory);
  auto* rep = app.add_subcommand("report", "Print a diagnostic summary and plottable columns");
  rep->add_option("run_dir", run_dir)->required()->check(CLI::ExistingDirectory);

  auto* pre = app.add_subcommand("presets", "List built-in presets");

  CLI11_PARSE(app, argc, argv);

  nlslab::RunOptions opts;
  opts.out_root = out_dir;
  try {
    if (*run) {
      auto cfg = load(target);
      if (!snapshots.empty()) {
        nlslab::apply_config_key(cfg, "time.snapshots", snapshots);
        cfg.require_valid();
      }
      const auto m = nlslab::run_scenario(cfg, opts);
      std::cout << "run_id: " << m.run_id << "\n"
                << "outcome: " << nlslab::to_string(m.outcome) << "\n"
                << "classification: " << nlslab::to_string(m.classification) << "\n"
                << "stop_reason: " << m.stop_reason << "\n"
                << "t_final: " << m.t_final << "\n"
                << "criterion: " << m.criterion_verdict << "\n"
                << "directory: " << m.directory.string() << "\n";
      for (const auto& f : m.regime_flags) std::cout << "flag: " << f << "\n";
      return exit_code(m.outcome);
    }
    if (*sw) {
      const auto spec = nlslab::parse_sweep(spec_path);
      const auto res = nlslab::sweep(spec, workers, opts);
      int failures = 0;
      for (const auto& e : res.entries) {
        std::cout << e.index << " " << e.run_id << " ";
        if (e.manifest) {
          std::cout << nlslab::to_string(e.manifest->outcome) << " "
                    << nlslab::to_string(e.manifest->classification) << "\n";
        } else {
          std::cout << "failed: " << e.error << "\n";
          ++failures;
        }
      }
      std::cout << "index: " << res.index_path.string() << "\n";
      return failures ? 1 : 0;
    }
    if (*cls) {
      std::cout << nlslab::to_string(nlslab::classify_run_dir(run_dir)) << "\n";
      return 0;
    }
    if (*rep) {
      std::cout << nlslab::report_run_dir(run_dir);
      return 0;
    }
    if (*pre) {
      for (const auto& p : nlslab::list_presets()) {
        std::cout << p.name << "  " << p.description;
        for (const auto& f : p.flags) std::cout << " [" << f << "]";
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const nlslab::ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << "config error: " << v << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
