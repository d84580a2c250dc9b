#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "nlslab/conserved.hpp"
#include "nlslab/harness.hpp"
#include "nlslab/initial_data.hpp"
#include "nlslab/morawetz.hpp"
#include "nlslab/spectral.hpp"
#include "nlslab/virial.hpp"

namespace nlslab {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::vector<ColumnInfo> series_columns(bool morawetz) {
  std::vector<ColumnInfo> c = {
      {"t", "time", "snapshot time"},
      {"mass", "L2^2", "mass M = ||u||_2^2"},
      {"energy", "energy", "E = K + P1 + P2"},
      {"kinetic", "energy", "K = 1/2 ||grad u||_2^2"},
      {"potential1", "energy", "l1/(p1+2) ||u||_{p1+2}^{p1+2}"},
      {"potential2", "energy", "l2/(p2+2) ||u||_{p2+2}^{p2+2}"},
      {"V", "length^2 L2^2", "variance int |x|^2 |u|^2"},
      {"y", "L2^2", "-Im int conj(u) x.grad u; V' = -4y"},
      {"V2_formula", "L2^2 / time^2", "8 ||grad u||^2 + sum_i 4 n l_i p_i/(p_i+2) ||u||^{p_i+2}"},
      {"y_lower_bound", "L2^2 / time", "c ||grad u||^2 for the active blowup case"},
      {"virial_untrusted", "flag", "1 when boundary mass makes weighted moments unreliable"},
      {"h", "L2^2", "pseudoconformal energy"},
      {"theta", "L2^2 / time^2", "h' = t theta"},
      {"l2_norm", "L2", "||u||_2"},
      {"grad_norm", "L2", "||grad u||_2"},
      {"h1_norm", "H1", "||u||_{H^1}"},
      {"sup_norm", "Linf", "max |u|"},
      {"lp1_power", "L^{p1+2}", "||u||_{p1+2}^{p1+2}"},
      {"lp2_power", "L^{p2+2}", "||u||_{p2+2}^{p2+2}"},
      {"z_space", "L^r", "||u||_{2(n+1)/(n-1)} (n >= 2)"},
      {"strichartz_partial", "L^r_{t,x}", "(int_0^t ||u||_r^r)^{1/r}, r = 2 + 4/n"},
      {"tail_fraction", "fraction", "L2 mass fraction above the top frequency octave"},
      {"boundary_fraction", "fraction", "L2 mass fraction with some |x_a| > 3L/8"},
  };
  if (morawetz) {
    c.push_back({"morawetz_A", "interaction", "-Delta(1/|x|) pairing of |u|^2 with itself"});
    c.push_back({"morawetz_B1", "interaction", "first power term of the interaction integrand"});
    c.push_back({"morawetz_B2", "interaction", "second power term of the interaction integrand"});
    c.push_back({"morawetz_integrand", "interaction", "(n-1) A + B1 + B2"});
  }
  return c;
}

// Streaming diagnostics fed by the snapshot observer.
class Pipeline {
 public:
  Pipeline(const SimulationConfig& cfg, const ComplexField& u0)
      : cfg_(cfg),
        nl_(cfg.nonlinearity()),
        verdict_(blowup_criteria(u0, cfg)),
        morawetz_(cfg.analysis.morawetz && cfg.n >= 3),
        series_(series_columns(morawetz_)),
        tracker_(u0, cfg) {}

  void observe(double t, const ComplexField& u) {
    const int n = cfg_.n;
    const auto cons = energy(u, nl_, t);
    const auto vir = virial_record(u, t, cfg_, verdict_.c);
    const auto pc = pseudoconformal_terms(u, t, nl_);
    const double h1 = sobolev_norm(u, NormSpec::H1());
    const double grad = std::sqrt(vir.gradient_sq);
    const double l2 = std::sqrt(cons.mass);
    const double z = n >= 2 ? sobolev_norm(u, NormSpec::Lr(2.0 * (n + 1) / (n - 1))) : 0.0;
    const double r = 2.0 + 4.0 / n;
    const double strich = lp_power(u, r);
    if (!times_.empty()) strich_acc_ += 0.5 * (t - times_.back()) * (strich + strich_prev_);
    strich_prev_ = strich;
    const auto sent = resolution_sentinel(u, cfg_);

    std::vector<double> row = {t,
                               cons.mass,
                               cons.energy,
                               cons.kinetic,
                               cons.potential1,
                               cons.potential2,
                               vir.V,
                               vir.y,
                               vir.V2_formula,
                               vir.y_lower_bound,
                               vir.untrusted ? 1.0 : 0.0,
                               pc.h,
                               pc.theta,
                               l2,
                               grad,
                               h1,
                               sup_norm(u),
                               lp_power(u, cfg_.p1 + 2.0),
                               lp_power(u, cfg_.p2 + 2.0),
                               z,
                               std::pow(strich_acc_, 1.0 / r),
                               sent.tail_fraction,
                               sent.boundary_fraction};
    if (morawetz_) {
      const auto m = interaction_terms(u, cfg_, t);
      morawetz_records_.push_back(m);
      row.insert(row.end(), {m.term_A, m.term_B1, m.term_B2, m.integrand(n)});
    }
    series_.add_row(row);
    times_.push_back(t);
    conserved_.push_back(cons);
    virial_.push_back(vir);
    norms_.push_back({t, h1, l2, grad, z});
    tracker_.add(t, u);
  }

  const SimulationConfig& cfg_;
  Nonlinearity nl_;
  CriterionVerdict verdict_;
  bool morawetz_;
  DiagnosticSeries series_;
  ScatteringTracker tracker_;
  std::vector<double> times_;
  std::vector<ConservedRecord> conserved_;
  std::vector<VirialRecord> virial_;
  std::vector<NormSample> norms_;
  std::vector<MorawetzRecord> morawetz_records_;
  double strich_acc_ = 0.0;
  double strich_prev_ = 0.0;
};

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// NaN and infinities are not representable in JSON.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string kind_name(KineticBoundKind k) {
  switch (k) {
    case KineticBoundKind::defocusing: return "defocusing";
    case KineticBoundKind::mixed: return "mixed";
    case KineticBoundKind::focusing_subcritical: return "focusing-subcritical";
    case KineticBoundKind::none: return "none";
  }
  return "none";
}

struct Analysis {
  json summary;
  ScatteringSummary scattering;
  bool monitor_clean = false;
};

Analysis analyse(const Pipeline& p, const EvolveResult& run) {
  const auto& cfg = p.cfg_;
  Analysis a;
  json& s = a.summary;
  s["outcome"] = to_string(run.outcome);
  s["stop_reason"] = run.stop_reason;
  s["t_final"] = run.t_final;
  s["snapshots"] = p.times_.size();
  s["steps"] = run.steps.size();
  s["gradient_norm_initial"] = run.gradient_norm_initial;
  s["gradient_norm_final"] = run.gradient_norm_final;

  const auto& v = p.verdict_;
  s["criterion"] = {{"status", to_string(v.status)},
                    {"case", static_cast<int>(v.which)},
                    {"c", v.c},
                    {"C", v.C},
                    {"energy", v.energy},
                    {"mass", v.mass},
                    {"V0", v.V0},
                    {"y0", v.y0},
                    {"t_star", optional_json(v.t_star)},
                    {"reasons", v.reasons}};

  if (p.conserved_.empty()) {
    s["kinetic_bound"] = {{"applicable", false}, {"note", "no records before the run stopped"}};
  } else {
    const auto kin = kinetic_bound_check(p.conserved_, cfg);
    s["kinetic_bound"] = {{"kind", kind_name(kin.kind)},
                          {"applicable", kin.applicable},
                          {"bound", num(kin.bound)},
                          {"constant", num(kin.constant)},
                          {"max_relative_violation", num(kin.max_relative_violation)},
                          {"violations", kin.violations},
                          {"marginal", kin.marginal},
                          {"note", kin.note}};
  }

  json vc = {{"available", false}};
  try {
    const auto r = virial_consistency(p.virial_);
    vc = {{"available", true},
          {"first_mismatch", num(r.first_mismatch)},
          {"second_mismatch", num(r.second_mismatch)},
          {"interior_points", r.interior_points}};
  } catch (const Error& e) {
    vc["note"] = e.what();
  }
  s["virial_consistency"] = vc;

  std::optional<double> detected;
  if (run.outcome != RunOutcome::completed) detected = run.t_final;
  const auto mon = blowup_monitor(p.virial_, p.conserved_, p.verdict_, detected);
  a.monitor_clean = mon.applicable && mon.critical_violations() == 0;
  s["monitor"] = {{"applicable", mon.applicable},
                  {"clean", a.monitor_clean},
                  {"checked", mon.checked},
                  {"y_growth_violations", mon.y_growth_violations},
                  {"y_monotone_violations", mon.y_monotone_violations},
                  {"v_monotone_violations", mon.v_monotone_violations},
                  {"concavity_violations", mon.concavity_violations},
                  {"worst_growth_margin", num(mon.worst_growth_margin)},
                  {"detected_time", optional_json(mon.detected_time)},
                  {"t_star", optional_json(mon.t_star)},
                  {"within_bound", mon.within_bound},
                  {"note", mon.note}};

  if (p.morawetz_ && !p.morawetz_records_.empty()) {
    const auto m = morawetz_budget_check(p.morawetz_records_, p.norms_, cfg);
    s["morawetz"] = {{"applicable", m.applicable},
                     {"integrated_lhs", num(m.integrated_lhs)},
                     {"budget", num(m.budget)},
                     {"sharp_budget", num(m.sharp_budget)},
                     {"ratio", num(m.ratio)},
                     {"within_budget", m.within_budget},
                     {"integrand_nonnegative", m.integrand_nonnegative},
                     {"accumulation_monotone", m.accumulation_monotone},
                     {"z_norm", num(m.z_norm)},
                     {"z_ratio", num(m.z_ratio)},
                     {"note", m.note}};
  }

  a.scattering = p.tracker_.finish();
  const auto& sc = a.scattering;
  s["scattering"] = {{"increments", sc.increments.size()},
                     {"increments_monotone", sc.increments_monotone},
                     {"certified_time", optional_json(sc.certified_time)},
                     {"linear_flow_checkpoints", sc.linear_flow.size()},
                     {"linear_flow_decreasing", sc.linear_flow_decreasing},
                     {"final_time", sc.final_time}};

  json fits = json::array();
  const auto fit_one = [&](double pw, const char* col) {
    json f = {{"p", pw}, {"column", col}};
    if (cfg.n >= 3 && pw >= energy_critical_power(cfg.n)) {
      f["note"] = "p is not below the energy-critical power";
    } else {
      try {
        const auto r = decay_fit(p.times_, p.series_.column(col), pw, cfg.n,
                                 cfg.analysis.decay_t1, cfg.analysis.decay_t2);
        f["slope"] = num(r.slope);
        f["bound_slope"] = r.bound_slope;
        f["pass"] = r.pass;
        f["samples"] = r.samples;
      } catch (const Error& e) {
        f["note"] = e.what();
      }
    }
    fits.push_back(f);
  };
  fit_one(cfg.p1, "lp1_power");
  fit_one(cfg.p2, "lp2_power");
  s["decay"] = fits;

  json st = json::object();
  if (p.times_.size() >= 2) {
    const double r = 2.0 + 4.0 / cfg.n;
    st["strichartz_diagonal"] = num(p.series_.column("strichartz_partial").back());
    st["strichartz_exponent"] = r;
    st["h1_sup"] = num(spacetime_norm({std::numeric_limits<double>::infinity(), 2.0, 0.0,
                                       p.times_.back()},
                                      p.times_, p.series_.column("h1_norm")));
  }
  s["spacetime"] = st;
  s["regime_flags"] = cfg.regime_flags();
  return a;
}

DiagnosticSeries steps_series(const EvolveResult& run) {
  DiagnosticSeries s({{"t", "time", "time after the step"},
                      {"dt", "time", "step used"},
                      {"local_error", "relative L2", "step-doubling estimate, 0 for fixed steps"},
                      {"tail_fraction", "fraction", "latest spectral tail reading"},
                      {"boundary_fraction", "fraction", "latest boundary mass reading"}});
  for (const auto& r : run.steps)
    s.add_row({r.t, r.dt_used, r.local_error_estimate, r.tail_fraction, r.boundary_fraction});
  return s;
}

DiagnosticSeries increments_series(const ScatteringSummary& sc) {
  DiagnosticSeries s({{"t", "time", "window start"},
                      {"increment", "H1", "||u+(t + window) - u+(t)||_{H^1}"}});
  for (const auto& i : sc.increments) s.add_row({i.t, i.increment});
  return s;
}

DiagnosticSeries linear_flow_series(const ScatteringSummary& sc) {
  DiagnosticSeries s({{"t", "time", "checkpoint"},
                      {"h1_distance", "H1", "||exp(-it Delta) u(t) - u+||_{H^1}"},
                      {"sigma_distance", "Sigma", "H1 distance plus ||H(t)(u - exp(it Delta) u+)||"}});
  for (const auto& r : sc.linear_flow) s.add_row({r.t, r.h1_distance, r.sigma_distance});
  return s;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  out << content;
  out.close();
  if (!out) throw Error("write failed for " + p.string());
}

json manifest_json(const RunManifest& m, const std::vector<std::string>& files) {
  json checks = json::object();
  for (const auto& [k, v] : m.checksums) checks[k] = v;
  return {{"run_id", m.run_id},
          {"name", m.name},
          {"config", m.config_text},
          {"outcome", to_string(m.outcome)},
          {"classification", to_string(m.classification)},
          {"stop_reason", m.stop_reason},
          {"t_final", m.t_final},
          {"criterion_verdict", m.criterion_verdict},
          {"regime_flags", m.regime_flags},
          {"tool_version", m.tool_version},
          {"series_paths", files},
          {"checksums", checks}};
}

RunOutcome outcome_from(const std::string& s) {
  if (s == "completed") return RunOutcome::completed;
  if (s == "blowup-detected") return RunOutcome::blowup_detected;
  if (s == "resolution-lost") return RunOutcome::resolution_lost;
  throw DataError("unknown outcome '" + s + "'");
}

Classification classification_from(const std::string& s) {
  for (auto c : {Classification::scattering_like, Classification::global_bounded,
                 Classification::blowup, Classification::untrusted})
    if (to_string(c) == s) return c;
  throw DataError("unknown classification '" + s + "'");
}

}  // namespace

fs::path default_output_root() {
  if (const char* env = std::getenv("NLSLAB_OUT"); env != nullptr && *env != '\0') return env;
  return fs::current_path() / "nlslab_runs";
}

std::string run_id_for(const SimulationConfig& cfg) {
  return cfg.name + "-" + sha256_hex(to_config_text(cfg)).substr(0, 12);
}

RunManifest run_scenario(const SimulationConfig& cfg_in, const RunOptions& options) {
  cfg_in.require_valid();
  SimulationConfig cfg = cfg_in;
  // The Duhamel integral and every time series start at t = 0.
  auto stops = cfg.effective_snapshot_times();
  if (stops.front() > 0.0) stops.insert(stops.begin(), 0.0);
  cfg.snapshot_times = stops;

  const ComplexField u0 = make_initial_data(cfg.initial, cfg.grid());
  Pipeline pipe(cfg, u0);
  const EvolveResult run = evolve_from(
      u0, cfg, {[&](double t, const ComplexField& u) { pipe.observe(t, u); }}, {false});
  const Analysis an = analyse(pipe, run);

  RunManifest m;
  m.run_id = run_id_for(cfg_in);
  m.name = cfg_in.name;
  m.config_text = to_config_text(cfg_in);
  m.outcome = run.outcome;
  m.stop_reason = run.stop_reason;
  m.t_final = run.t_final;
  m.criterion_verdict = pipe.verdict_.summary();
  m.regime_flags = cfg_in.regime_flags();

  ClassificationInputs ci;
  ci.outcome = run.outcome;
  ci.monitor_clean = an.monitor_clean;
  ci.increments = an.scattering.increments;
  ci.t_start = cfg.analysis.scattering_t_start;
  ci.threshold = cfg.analysis.scattering_threshold;
  ci.kinetic = pipe.series_.column("kinetic");
  ci.energy0 = pipe.series_.column("energy").front();
  ci.growth_limit = cfg.analysis.kinetic_growth_limit;
  m.classification = classify_regime(ci);

  json summary = an.summary;
  summary["classification"] = to_string(m.classification);
  const std::vector<std::pair<std::string, std::string>> files = {
      {"series.csv", pipe.series_.to_csv()},
      {"series.json", pipe.series_.schema_json()},
      {"steps.csv", steps_series(run).to_csv()},
      {"increments.csv", increments_series(an.scattering).to_csv()},
      {"linear_flow.csv", linear_flow_series(an.scattering).to_csv()},
      {"summary.json", summary.dump(2) + "\n"},
  };
  std::vector<std::string> names;
  for (const auto& [name, content] : files) {
    m.checksums[name] = sha256_hex(content);
    names.push_back(name);
  }
  if (!options.write_outputs) return m;

  const fs::path root = options.out_root.empty() ? default_output_root() : options.out_root;
  fs::create_directories(root);
  std::ostringstream tag;
  tag << ::getpid() << "-" << std::hash<std::thread::id>{}(std::this_thread::get_id());
  const fs::path staging = root / ("." + m.run_id + ".partial-" + tag.str());
  const fs::path final_dir = root / m.run_id;
  try {
    fs::remove_all(staging);
    fs::create_directory(staging);
    for (const auto& [name, content] : files) write_file(staging / name, content);
    write_file(staging / "manifest.json", manifest_json(m, names).dump(2) + "\n");
    fs::remove_all(final_dir);
    fs::rename(staging, final_dir);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(staging, ec);
    throw;
  }
  m.directory = final_dir;
  return m;
}

RunManifest run_scenario(const std::string& preset_name, const RunOptions& options) {
  return run_scenario(preset(preset_name), options);
}

RunManifest read_manifest(const fs::path& run_dir) {
  json j;
  try {
    j = json::parse(read_file(run_dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  RunManifest m;
  try {
    m.run_id = j.at("run_id").get<std::string>();
    m.name = j.at("name").get<std::string>();
    m.config_text = j.at("config").get<std::string>();
    m.outcome = outcome_from(j.at("outcome").get<std::string>());
    m.classification = classification_from(j.at("classification").get<std::string>());
    m.stop_reason = j.at("stop_reason").get<std::string>();
    m.t_final = j.at("t_final").get<double>();
    m.criterion_verdict = j.at("criterion_verdict").get<std::string>();
    m.regime_flags = j.at("regime_flags").get<std::vector<std::string>>();
    m.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& [k, v] : j.at("checksums").items()) m.checksums[k] = v.get<std::string>();
    for (const auto& f : j.at("series_paths"))
      if (!m.checksums.count(f.get<std::string>()))
        throw DataError("manifest lists " + f.get<std::string>() + " without a checksum");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  for (const auto& [name, digest] : m.checksums) {
    const fs::path p = run_dir / name;
    if (!fs::exists(p)) throw DataError("missing series file " + p.string());
    if (sha256_hex(read_file(p)) != digest) throw DataError("checksum mismatch for " + p.string());
  }
  m.directory = run_dir;
  return m;
}

Classification classify_run_dir(const fs::path& run_dir) {
  const RunManifest m = read_manifest(run_dir);
  const SimulationConfig cfg = parse_config_text(m.config_text);
  const json summary = json::parse(read_file(run_dir / "summary.json"));
  const auto series = DiagnosticSeries::from_csv(read_file(run_dir / "series.csv"));
  const auto inc = DiagnosticSeries::from_csv(read_file(run_dir / "increments.csv"));

  ClassificationInputs ci;
  ci.outcome = m.outcome;
  ci.monitor_clean = summary.at("monitor").at("clean").get<bool>();
  for (std::size_t i = 0; i < inc.rows(); ++i)
    ci.increments.push_back({inc.column("t")[i], inc.column("increment")[i]});
  ci.t_start = cfg.analysis.scattering_t_start;
  ci.threshold = cfg.analysis.scattering_threshold;
  ci.kinetic = series.column("kinetic");
  ci.energy0 = series.rows() ? series.column("energy").front() : 0.0;
  ci.growth_limit = cfg.analysis.kinetic_growth_limit;
  return classify_regime(ci);
}

std::string report_run_dir(const fs::path& run_dir) {
  const RunManifest m = read_manifest(run_dir);
  const json summary = json::parse(read_file(run_dir / "summary.json"));
  const auto series = DiagnosticSeries::from_csv(read_file(run_dir / "series.csv"));
  std::ostringstream os;
  os << "# run_id: " << m.run_id << "\n"
     << "# outcome: " << to_string(m.outcome) << "\n"
     << "# classification: " << to_string(classify_run_dir(run_dir)) << "\n"
     << "# stop_reason: " << m.stop_reason << "\n"
     << "# t_final: " << m.t_final << "\n"
     << "# criterion: " << m.criterion_verdict << "\n";
  for (const auto& f : m.regime_flags) os << "# flag: " << f << "\n";
  for (const auto& key : {"kinetic_bound", "virial_consistency", "monitor", "morawetz",
                          "scattering", "decay", "spacetime"})
    if (summary.contains(key)) os << "# " << key << ": " << summary[key].dump() << "\n";
  os << "#";
  for (const auto& c : series.columns()) os << " " << c.name;
  os << "\n";
  char buf[32];
  for (std::size_t r = 0; r < series.rows(); ++r) {
    for (std::size_t i = 0; i < series.columns().size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g", series.column(series.columns()[i].name)[r]);
      os << (i ? " " : "") << buf;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace nlslab
