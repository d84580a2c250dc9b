#include "nlslab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "nlslab/fft.hpp"
#include "nlslab/initial_data.hpp"

namespace nlslab {
namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

// Applies the phase rotation in place and returns max |u|^2.
double apply_phase(cplx* u, std::size_t size, double tau, const Nonlinearity& nl) {
  double max_sq = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double s = std::norm(u[i]);
    const double rate = nl.potential_rate(s);
    if (!std::isfinite(rate) || !std::isfinite(s))
      throw AmplitudeOverflowError("nonlinear phase rate overflowed (|u|^2 = " +
                                   std::to_string(s) + ")");
    max_sq = std::max(max_sq, s);
    double sn, cs;
    ::sincos(-tau * rate, &sn, &cs);
    u[i] *= cplx{cs, sn};
  }
  return max_sq;
}

class Propagator {
 public:
  Propagator(Grid grid, Nonlinearity nl) : grid_(std::move(grid)), nl_(nl) {}

  const Grid& grid() const { return grid_; }

  double potential(CVector& u, double tau) {
    last_max_sq_ = nl_.is_zero() ? last_max_sq_ : apply_phase(u.data(), u.size(), tau, nl_);
    return last_max_sq_;
  }

  void kinetic(CVector& u, double dt) {
    const CVector& m = multiplier(dt);
    fft::forward(grid_, u.data());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] *= m[k];
    fft::inverse(grid_, u.data());
  }

  // k consecutive Strang steps with the adjacent half phases merged.
  void strang(CVector& u, double h, std::size_t k = 1) {
    potential(u, 0.5 * h);
    for (std::size_t j = 0; j < k; ++j) {
      kinetic(u, h);
      potential(u, j + 1 == k ? 0.5 * h : h);
    }
  }

  double max_abs_sq() const { return last_max_sq_; }
  void set_max_abs_sq(double v) { last_max_sq_ = v; }

 private:
  const CVector& multiplier(double dt) {
    for (const auto& [key, m] : cache_)
      if (key == dt) return m;
    const auto freqs = grid_.axis_freqs();
    std::vector<cplx> axis(freqs.size());
    for (std::size_t k = 0; k < freqs.size(); ++k)
      axis[k] = std::polar(1.0, -kFourPiSq * dt * freqs[k] * freqs[k]);
    CVector m(1, cplx{1.0, 0.0});
    for (int a = 0; a < grid_.dim(); ++a) {
      CVector next(m.size() * axis.size());
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < axis.size(); ++k) next[i * axis.size() + k] = m[i] * axis[k];
      m.swap(next);
    }
    if (cache_.size() >= 4) cache_.pop_front();
    cache_.emplace_back(dt, std::move(m));
    return cache_.back().second;
  }

  Grid grid_;
  Nonlinearity nl_;
  std::deque<std::pair<double, CVector>> cache_;
  double last_max_sq_ = 0.0;
};

struct Probe {
  double tail_fraction = 0.0;
  double boundary_fraction = 0.0;
  double gradient_sq = 0.0;
  double max_abs_sq = 0.0;
};

// One FFT yields the spectral tail and ||grad u||^2; the rest is physical space.
Probe probe(const Grid& g, const CVector& u, CVector& scratch) {
  const std::size_t n_axis = g.points_per_axis();
  const auto coords = g.axis_coords();
  const auto modes = g.axis_modes();
  const auto xi2 = g.freq_sq();
  const double edge = 0.375 * g.length();
  const int tail_mode = static_cast<int>(n_axis / 4);

  std::vector<char> near_edge(n_axis), high_mode(n_axis);
  for (std::size_t j = 0; j < n_axis; ++j) {
    near_edge[j] = std::abs(coords[j]) > edge;
    high_mode[j] = std::abs(modes[j]) > tail_mode;
  }
  const auto flagged = [&](std::size_t i, const std::vector<char>& table) {
    for (int a = 0; a < g.dim(); ++a)
      if (table[g.axis_index(i, a)]) return true;
    return false;
  };

  Probe p;
  double mass = 0.0, edge_mass = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double s = std::norm(u[i]);
    mass += s;
    p.max_abs_sq = std::max(p.max_abs_sq, s);
    if (flagged(i, near_edge)) edge_mass += s;
  }

  scratch.assign(u.begin(), u.end());
  fft::forward(g, scratch.data());
  double spec_total = 0.0, spec_tail = 0.0, grad = 0.0;
  for (std::size_t k = 0; k < scratch.size(); ++k) {
    const double s = std::norm(scratch[k]);
    spec_total += s;
    grad += xi2[k] * s;
    if (flagged(k, high_mode)) spec_tail += s;
  }
  p.boundary_fraction = mass > 0.0 ? edge_mass / mass : 0.0;
  p.tail_fraction = spec_total > 0.0 ? spec_tail / spec_total : 0.0;
  p.gradient_sq = kFourPiSq * grad * g.cell_volume() / static_cast<double>(u.size());
  return p;
}

double relative_l2_difference(const CVector& a, const CVector& b) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += std::norm(a[i] - b[i]);
    ref += std::norm(b[i]);
  }
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff);
}

}  // namespace

std::string to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::completed: return "completed";
    case RunOutcome::blowup_detected: return "blowup-detected";
    case RunOutcome::resolution_lost: return "resolution-lost";
  }
  return "?";
}

ComplexField nonlinear_phase_step(const ComplexField& u, double tau, const Nonlinearity& nl) {
  ComplexField out = u;
  apply_phase(out.data(), out.size(), tau, nl);
  return out;
}

ComplexField strang_step(const ComplexField& u, double dt, const Nonlinearity& nl) {
  u.require_finite("strang_step");
  Propagator prop(u.grid(), nl);
  CVector v(u.values().begin(), u.values().end());
  prop.strang(v, dt);
  return ComplexField(u.grid(), std::move(v));
}

ComplexField strang_step(const ComplexField& u, double dt, const SimulationConfig& cfg) {
  if (!(dt >= cfg.dt_min && dt <= cfg.dt_max))
    throw DataError("strang_step: dt outside [dt_min, dt_max]");
  if (!(u.grid() == cfg.grid())) throw DataError("strang_step: field grid differs from config");
  return strang_step(u, dt, cfg.nonlinearity());
}

SentinelReading resolution_sentinel(const ComplexField& u, double eps_tail, double eps_bnd) {
  CVector scratch;
  CVector v(u.values().begin(), u.values().end());
  const Probe p = probe(u.grid(), v, scratch);
  return {p.tail_fraction, p.boundary_fraction,
          p.tail_fraction < eps_tail && p.boundary_fraction < eps_bnd};
}

SentinelReading resolution_sentinel(const ComplexField& u, const SimulationConfig& cfg) {
  return resolution_sentinel(u, cfg.eps_tail, cfg.eps_bnd);
}

EvolveResult evolve(const SimulationConfig& cfg, const std::vector<Observer>& observers,
                    EvolveOptions options) {
  cfg.require_valid();
  return evolve_from(make_initial_data(cfg.initial, cfg.grid()), cfg, observers, options);
}

EvolveResult evolve_from(const ComplexField& u0, const SimulationConfig& cfg,
                         const std::vector<Observer>& observers, EvolveOptions options) {
  cfg.require_valid();
  const Grid grid = cfg.grid();
  if (!(u0.grid() == grid)) throw DataError("evolve: initial field grid differs from config");
  u0.require_finite("evolve");

  const std::vector<double> stops = cfg.effective_snapshot_times();

  EvolveResult result;
  Propagator prop(grid, cfg.nonlinearity());
  CVector u(u0.values().begin(), u0.values().end());
  CVector scratch, full, half;

  double t = 0.0;
  std::size_t next_stop = 0;
  std::size_t accepted = 0;
  std::size_t since_probe = 0;

  const auto emit = [&](double at) {
    ComplexField f(grid, u);
    for (const auto& obs : observers) obs(at, f);
    if (options.keep_snapshots) result.snapshots.push_back({at, std::move(f)});
  };

  // Returns true when integration must stop.
  SentinelReading last_reading;
  double grad0 = 0.0;
  const auto check = [&](bool initial) {
    const Probe p = probe(grid, u, scratch);
    prop.set_max_abs_sq(p.max_abs_sq);
    last_reading = {p.tail_fraction, p.boundary_fraction,
                    p.tail_fraction < cfg.eps_tail && p.boundary_fraction < cfg.eps_bnd};
    const double grad = std::sqrt(p.gradient_sq);
    if (initial) grad0 = grad;
    result.gradient_norm_final = grad;
    since_probe = 0;
    if (!last_reading.ok) {
      result.outcome = RunOutcome::resolution_lost;
      result.stop_reason = last_reading.tail_fraction >= cfg.eps_tail
                               ? "spectral tail fraction exceeded eps_tail"
                               : "boundary mass fraction exceeded eps_bnd";
      return true;
    }
    if (!initial && grad0 > 0.0 && grad >= cfg.blowup_gradient_factor * grad0) {
      result.outcome = RunOutcome::blowup_detected;
      result.stop_reason = "gradient norm exceeded blowup factor";
      return true;
    }
    return false;
  };

  bool stopped = check(true);
  result.gradient_norm_initial = grad0;

  const double t_scale = std::max(1.0, cfg.t_end);
  const double snap_tol = 1e-12 * t_scale;
  const double cube_root_acc = std::cbrt(cfg.accuracy_target);
  double dt = cfg.dt_init;

  try {
    while (!stopped && next_stop < stops.size()) {
      const double target = stops[next_stop];
      if (target - t <= snap_tol) {
        t = std::max(t, target);
        emit(target);
        ++next_stop;
        continue;
      }
      if (accepted >= cfg.max_steps) {
        result.outcome = RunOutcome::resolution_lost;
        result.stop_reason = "step budget exhausted";
        break;
      }

      if (!cfg.adaptive()) {
        // Fixed step: advance in merged blocks up to the next probe or stop.
        const double remaining = target - t;
        auto whole = static_cast<std::size_t>(std::floor(remaining / dt + 1e-9));
        const std::size_t until_probe = cfg.sentinel_interval - since_probe;
        std::size_t k = std::min(whole, until_probe);
        double h = dt;
        bool lands = false;
        if (k == 0) {
          k = 1;
          h = remaining;
          lands = true;
        } else if (k == whole && std::abs(remaining - static_cast<double>(k) * dt) <= 1e-9 * dt) {
          lands = true;
        }
        prop.strang(u, h, k);
        for (std::size_t j = 1; j <= k; ++j)
          result.steps.push_back({t + static_cast<double>(j) * h, h, 0.0,
                                  last_reading.tail_fraction, last_reading.boundary_fraction});
        t = lands ? target : t + static_cast<double>(k) * h;
        result.steps.back().t = t;
        accepted += k;
        since_probe += k;
        if (since_probe >= cfg.sentinel_interval || lands) {
          stopped = check(false);
          result.steps.back().tail_fraction = last_reading.tail_fraction;
          result.steps.back().boundary_fraction = last_reading.boundary_fraction;
        }
        continue;
      }

      double h = std::min(dt, target - t);
      const double omega =
          std::abs(cfg.lambda1) * std::pow(prop.max_abs_sq(), 0.5 * cfg.p1) +
          std::abs(cfg.lambda2) * std::pow(prop.max_abs_sq(), 0.5 * cfg.p2);
      if (omega > 0.0) h = std::min(h, std::max(cfg.dt_min, cube_root_acc / omega));
      bool lands = target - t - h <= 0.01 * h;
      if (lands) h = target - t;

      full.assign(u.begin(), u.end());
      prop.strang(full, h);
      half.assign(u.begin(), u.end());
      prop.strang(half, 0.5 * h, 2);
      const double err = relative_l2_difference(full, half);

      if (err > cfg.accuracy_target && h > cfg.dt_min * (1.0 + 1e-12)) {
        const double shrink = std::max(0.2, 0.9 * std::cbrt(cfg.accuracy_target / err));
        dt = std::max(cfg.dt_min, h * shrink);
        continue;
      }
      u.swap(half);  // the last phase pass ran on `half`, so max_abs_sq is current
      t = lands ? target : t + h;
      ++accepted;
      ++since_probe;
      if (!lands || h >= dt) {
        const double grow = err > 0.0 ? 0.9 * std::cbrt(cfg.accuracy_target / err) : 2.0;
        dt = std::clamp(h * std::clamp(grow, 0.2, 2.0), cfg.dt_min, cfg.dt_max);
      }
      result.steps.push_back(
          {t, h, err, last_reading.tail_fraction, last_reading.boundary_fraction});
      if (since_probe >= cfg.sentinel_interval || lands) {
        stopped = check(false);
        result.steps.back().tail_fraction = last_reading.tail_fraction;
        result.steps.back().boundary_fraction = last_reading.boundary_fraction;
      }
    }
  } catch (const AmplitudeOverflowError& e) {
    result.outcome = RunOutcome::resolution_lost;
    result.stop_reason = e.what();
  }

  result.t_final = t;
  result.u_final = ComplexField(grid, std::move(u));
  return result;
}

}  // namespace nlslab
