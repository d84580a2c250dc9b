#include "nlslab/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlslab/fft.hpp"
#include "nlslab/spectral.hpp"

namespace nlslab {
namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

// exp(+4 pi^2 i t |xi|^2), the lattice symbol of exp(-it Delta).
void apply_backward_symbol(const Grid& g, CVector& spec, double t) {
  const auto freqs = g.axis_freqs();
  std::vector<cplx> axis(freqs.size());
  for (std::size_t k = 0; k < freqs.size(); ++k)
    axis[k] = std::polar(1.0, kFourPiSq * t * freqs[k] * freqs[k]);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    cplx m = 1.0;
    for (int a = 0; a < g.dim(); ++a) m *= axis[g.axis_index(i, a)];
    spec[i] *= m;
  }
}

// ||v||_{H^1} with v given by its raw DFT.
double h1_norm(const ComplexField& v) { return sobolev_norm(v, NormSpec::H1()); }

}  // namespace

std::vector<ComplexField> galilean_apply(const ComplexField& u, double t) {
  const Grid& g = u.grid();
  auto out = gradient(u);
  const auto coords = g.axis_coords();
  const cplx two_it{0.0, 2.0 * t};
  for (int a = 0; a < g.dim(); ++a)
    for (std::size_t i = 0; i < u.size(); ++i)
      out[a][i] = coords[g.axis_index(i, a)] * u[i] + two_it * out[a][i];
  return out;
}

double galilean_norm_sq(const ComplexField& u, double t) {
  double sum = 0.0;
  for (const auto& c : galilean_apply(u, t)) sum += lp_power(c, 2.0);
  return sum;
}

bool pseudoconformal_regime(const SimulationConfig& cfg) {
  return cfg.n >= 3 && cfg.lambda1 > 0.0 && cfg.lambda2 > 0.0 &&
         std::abs(cfg.p2 - energy_critical_power(cfg.n)) <= 1e-12 * cfg.p2;
}

PseudoconformalValue pseudoconformal_terms(const ComplexField& u, double t,
                                           const Nonlinearity& nl) {
  const int n = u.grid().dim();
  PseudoconformalValue v;
  v.h = galilean_norm_sq(u, t);
  const auto add = [&](double lambda, double p) {
    if (lambda == 0.0) return;
    const double norm = lp_power(u, p + 2.0);
    v.h += 8.0 * t * t * lambda / (p + 2.0) * norm;
    v.theta += lambda * 4.0 * (4.0 - p * n) / (p + 2.0) * norm;
  };
  add(nl.lambda1, nl.p1);
  add(nl.lambda2, nl.p2);
  return v;
}

PseudoconformalValue pseudoconformal_energy(const ComplexField& u, double t,
                                            const SimulationConfig& cfg) {
  if (!pseudoconformal_regime(cfg))
    throw InapplicableError(
        "pseudoconformal law needs lambda1, lambda2 > 0, p2 = 4/(n-2) and n >= 3");
  return pseudoconformal_terms(u, t, cfg.nonlinearity());
}

// ---------------------------------------------------------------------------

DuhamelAccumulator::DuhamelAccumulator(const ComplexField& u0, Nonlinearity nl)
    : grid_(u0.grid()), nl_(nl), u0_(u0), integral_hat_(u0.size()), prev_hat_(u0.size()) {}

void DuhamelAccumulator::add(double t, const ComplexField& u) {
  if (!(u.grid() == grid_)) throw DataError("Duhamel sample grid mismatch");
  if (samples_ == 0 && t != 0.0) throw DataError("Duhamel accumulation must start at t = 0");
  if (samples_ > 0 && !(t > t_)) throw DataError("Duhamel sample times must increase");

  CVector cur(u.size());
  if (!nl_.is_zero()) {
    for (std::size_t i = 0; i < u.size(); ++i) cur[i] = nl_.potential_rate(std::norm(u[i])) * u[i];
    fft::forward(grid_, cur.data());
    apply_backward_symbol(grid_, cur, t);
  }
  if (samples_ > 0) {
    const double w = 0.5 * (t - t_);
    for (std::size_t k = 0; k < cur.size(); ++k) integral_hat_[k] += w * (prev_hat_[k] + cur[k]);
  }
  prev_hat_.swap(cur);
  t_ = t;
  ++samples_;
}

ComplexField DuhamelAccumulator::state() const {
  CVector v = integral_hat_;
  fft::inverse(grid_, v.data());
  ComplexField out = u0_;
  const cplx minus_i{0.0, -1.0};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += minus_i * v[i];
  return out;
}

ComplexField duhamel_scattering_state(const std::vector<Snapshot>& snapshots,
                                      const SimulationConfig& cfg, double t_cut) {
  if (snapshots.empty() || snapshots.front().t != 0.0)
    throw DataError("Duhamel state needs a snapshot at t = 0");
  DuhamelAccumulator acc(snapshots.front().u, cfg.nonlinearity());
  for (const auto& s : snapshots) {
    if (s.t > t_cut * (1.0 + 1e-12) + 1e-15) break;
    acc.add(s.t, s.u);
  }
  if (!same_time(acc.time(), t_cut)) throw DataError("no snapshot at t_cut");
  return acc.state();
}

ComplexField duhamel_scattering_state(const EvolveResult& run, const SimulationConfig& cfg,
                                      double t_cut) {
  if (run.outcome != RunOutcome::completed)
    throw UnavailableError("scattering state unavailable for a run that ended in " +
                           to_string(run.outcome));
  return duhamel_scattering_state(run.snapshots, cfg, t_cut);
}

// ---------------------------------------------------------------------------

ScatteringTracker::ScatteringTracker(const ComplexField& u0, const SimulationConfig& cfg)
    : cfg_(cfg), duhamel_(u0, cfg.nonlinearity()) {}

void ScatteringTracker::add(double t, const ComplexField& u) {
  duhamel_.add(t, u);
  if (!same_time(t, next_checkpoint_)) {
    if (t > next_checkpoint_) throw DataError("snapshot schedule skipped a scattering checkpoint");
    return;
  }
  const double window = cfg_.analysis.scattering_window;
  ComplexField up = duhamel_.state();
  for (const auto& c : ring_)
    if (same_time(c.t + window, t)) increments_.push_back({c.t, h1_norm(up - c.u_plus)});
  ring_.push_back({t, std::move(up)});
  while (!ring_.empty() && ring_.front().t + window < t - 1e-9 * std::max(1.0, t)) ring_.pop_front();

  if (cfg_.analysis.linear_flow) pulled_back_.emplace_back(t, free_propagate(u, -t));
  next_checkpoint_ = static_cast<double>(++checkpoint_index_) * cfg_.analysis.checkpoint_interval;
}

ScatteringSummary ScatteringTracker::finish() const {
  ScatteringSummary s;
  s.final_time = duhamel_.time();
  s.increments = increments_;
  const double t0 = cfg_.analysis.scattering_t_start;
  const double thr = cfg_.analysis.scattering_threshold;

  s.increments_monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& inc : s.increments) {
    if (inc.t < t0 - 1e-9) continue;
    if (inc.increment > prev * (1.0 + 1e-6)) s.increments_monotone = false;
    prev = inc.increment;
    if (!s.certified_time && inc.increment < thr) s.certified_time = inc.t;
  }

  if (!pulled_back_.empty()) {
    const ComplexField u_plus = duhamel_.state();
    double prev_d = std::numeric_limits<double>::infinity();
    s.linear_flow_decreasing = true;
    for (const auto& [t, pb] : pulled_back_) {
      ScatteringRecord r;
      r.t = t;
      const ComplexField diff = pb - u_plus;
      r.h1_distance = h1_norm(diff);
      const ComplexField w = free_propagate(diff, t);
      r.sigma_distance = r.h1_distance + std::sqrt(galilean_norm_sq(w, t));
      if (t >= t0 - 1e-9) {
        if (r.h1_distance > prev_d * (1.0 + 1e-6)) s.linear_flow_decreasing = false;
        prev_d = r.h1_distance;
      }
      s.linear_flow.push_back(std::move(r));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& values, double p,
                   int n, double t1, double t2) {
  if (t.size() != values.size()) throw DataError("decay_fit: length mismatch");
  if (!(t1 >= 1.0 && t2 > t1)) throw DataError("decay_fit: window must satisfy 1 <= T1 < T2");
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < t1 - 1e-9 || t[k] > t2 + 1e-9) continue;
    if (!(values[k] > 0.0)) throw DegenerateFitError("decay_fit: nonpositive norm sample");
    lx.push_back(std::log(t[k]));
    ly.push_back(std::log(values[k]));
  }
  if (lx.size() < 10) throw DegenerateFitError("decay_fit: fewer than 10 samples in the window");
  const double m = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  DecayFit fit;
  fit.samples = lx.size();
  fit.slope = sxy / sxx;
  fit.bound_slope = -std::min(2.0, p * n / 2.0);
  fit.pass = fit.slope <= fit.bound_slope + 0.2;
  return fit;
}

}  // namespace nlslab
